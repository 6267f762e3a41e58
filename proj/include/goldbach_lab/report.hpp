#pragma once

#include <string>
#include <utility>
#include <vector>

namespace goldbach_lab {

/// An analytic bound paired with the quantity it is meant to dominate.
///
/// `terms` itemizes the bound's main terms in the order they were summed;
/// `flags` carries validity notes ("outside stated validity", "constants
/// reconstructed", ...). `slack` is measured / bound, so a value <= 1 means
/// the bound held.
struct BoundReport {
    std::string name;
    double bound = 0.0;
    double measured = 0.0;
    double slack = 0.0;
    bool holds = true;
    std::vector<std::pair<std::string, double>> terms;
    std::vector<std::string> flags;

    void add_term(std::string label, double value) { terms.emplace_back(std::move(label), value); }

    void flag(std::string note) { flags.push_back(std::move(note)); }

    bool has_flag(const std::string& note) const {
        for (const auto& f : flags)
            if (f == note) return true;
        return false;
    }

    /// Recomputes slack and `holds` from bound and measured.
    void finalize() {
        slack = bound > 0.0 ? measured / bound : (measured > 0.0 ? 1e300 : 0.0);
        holds = measured <= bound;
    }
};

}  // namespace goldbach_lab
