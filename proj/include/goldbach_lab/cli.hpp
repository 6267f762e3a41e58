#pragma once

// Command layer behind the goldbach-lab executable. Every command reads a
// RunConfig, writes its files and returns an exit status:
// 0 success, 2 mathematical failure, 3 resource, 64 usage.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "budget.hpp"
#include "certified.hpp"
#include "errors.hpp"
#include "expsum.hpp"
#include "format.hpp"
#include "ladder.hpp"
#include "large_sieve.hpp"
#include "majorarc.hpp"
#include "minorarc.hpp"
#include "smoothing.hpp"

namespace goldbach_lab::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_math = 2;
inline constexpr int exit_resource = 3;
inline constexpr int exit_usage = 64;

inline constexpr double reps_ratio_tolerance = 0.02;

/// Flat key = value configuration. Keys with units carry them as suffixes.
struct RunConfig {
    std::string command;
    std::optional<double> x;
    std::optional<u64> n_lo, n_hi;
    std::optional<u64> r, s;
    std::string eta;
    double kappa = 49.0;
    double R = 200.0;
    unsigned workers = 1;
    bool certified = false;
    std::string checkpoint;
    std::string out;
    std::optional<u64> samples;
    u64 seed = 1;
    double alpha_lo = 0.0;
    double alpha_hi = 1.0;
    u64 points = 1000;
    std::optional<u64> limit;
    std::optional<u64> max_gap;
    std::string ladder;
    std::string witnesses;
    std::optional<u64> budget_mb;
    bool arcs = false;

    static const std::vector<std::string>& keys() {
        static const std::vector<std::string> k = {
            "command", "x",      "n_lo",     "n_hi",     "r",       "s",         "eta",    "kappa",
            "R",       "workers", "certified", "checkpoint", "out",  "samples",   "seed",   "alpha_lo",
            "alpha_hi", "points", "limit",    "max_gap",  "ladder", "witnesses", "budget_mb", "arcs"};
        return k;
    }

    void set(const std::string& key, const std::string& value) {
        auto to_double = [&](const std::string& v) {
            std::size_t used = 0;
            double d = 0.0;
            try {
                d = std::stod(v, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != v.size() || v.empty() || !std::isfinite(d)) throw DomainError("config: '" + key + "' needs a number, got '" + v + "'");
            return d;
        };
        auto to_u64 = [&](const std::string& v) {
            const double d = to_double(v);
            if (d < 0.0 || d != std::floor(d) || d > 1.8e19)
                throw DomainError("config: '" + key + "' needs a non-negative integer, got '" + v + "'");
            if (v.find_first_not_of("0123456789") == std::string::npos) return static_cast<u64>(std::stoull(v));
            return static_cast<u64>(d);
        };
        auto to_bool = [&](const std::string& v) {
            if (v == "true" || v == "1" || v == "yes") return true;
            if (v == "false" || v == "0" || v == "no") return false;
            throw DomainError("config: '" + key + "' needs true/false, got '" + v + "'");
        };
        if (key == "command") command = value;
        else if (key == "x") x = to_double(value);
        else if (key == "n_lo") n_lo = to_u64(value);
        else if (key == "n_hi") n_hi = to_u64(value);
        else if (key == "r") r = to_u64(value);
        else if (key == "s") s = to_u64(value);
        else if (key == "eta") eta = value;
        else if (key == "kappa") kappa = to_double(value);
        else if (key == "R") R = to_double(value);
        else if (key == "workers") {
            const u64 w = to_u64(value);
            if (w < 1 || w > 1024) throw DomainError("config: workers must lie in [1, 1024]");
            workers = static_cast<unsigned>(w);
        } else if (key == "certified") certified = to_bool(value);
        else if (key == "checkpoint") checkpoint = value;
        else if (key == "out") out = value;
        else if (key == "samples") samples = to_u64(value);
        else if (key == "seed") seed = to_u64(value);
        else if (key == "alpha_lo") alpha_lo = to_double(value);
        else if (key == "alpha_hi") alpha_hi = to_double(value);
        else if (key == "points") points = to_u64(value);
        else if (key == "limit") limit = to_u64(value);
        else if (key == "max_gap") max_gap = to_u64(value);
        else if (key == "ladder") ladder = value;
        else if (key == "witnesses") witnesses = value;
        else if (key == "budget_mb") budget_mb = to_u64(value);
        else if (key == "arcs") arcs = to_bool(value);
        else throw DomainError("config: unknown key '" + key + "'");
    }

    /// One `key = value` line per set field, in keys() order.
    std::string to_text() const {
        std::ostringstream os;
        auto line = [&](const char* k, const std::string& v) { os << k << " = " << v << '\n'; };
        auto opt_u = [&](const char* k, const std::optional<u64>& v) {
            if (v) line(k, std::to_string(*v));
        };
        if (!command.empty()) line("command", command);
        if (x) line("x", fmt(*x));
        opt_u("n_lo", n_lo);
        opt_u("n_hi", n_hi);
        opt_u("r", r);
        opt_u("s", s);
        if (!eta.empty()) line("eta", eta);
        line("kappa", fmt(kappa));
        line("R", fmt(R));
        line("workers", std::to_string(workers));
        line("certified", certified ? "true" : "false");
        if (!checkpoint.empty()) line("checkpoint", checkpoint);
        if (!out.empty()) line("out", out);
        opt_u("samples", samples);
        line("seed", std::to_string(seed));
        line("alpha_lo", fmt(alpha_lo));
        line("alpha_hi", fmt(alpha_hi));
        line("points", std::to_string(points));
        opt_u("limit", limit);
        opt_u("max_gap", max_gap);
        if (!ladder.empty()) line("ladder", ladder);
        if (!witnesses.empty()) line("witnesses", witnesses);
        opt_u("budget_mb", budget_mb);
        line("arcs", arcs ? "true" : "false");
        return os.str();
    }

    /// Parses `key = value` lines; '#' starts a comment.
    static RunConfig from_text(const std::string& text) {
        RunConfig c;
        c.apply_text(text);
        return c;
    }

    void apply_text(const std::string& text) {
        std::istringstream is(text);
        std::string raw;
        int lineno = 0;
        auto trim = [](std::string v) {
            const auto a = v.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            const auto b = v.find_last_not_of(" \t\r");
            return v.substr(a, b - a + 1);
        };
        while (std::getline(is, raw)) {
            ++lineno;
            const auto hash = raw.find('#');
            const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
            set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
    }

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline RunConfig read_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw DomainError("config: cannot open " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return RunConfig::from_text(ss.str());
}

namespace detail {

inline void apply_globals(const RunConfig& c) {
    goldbach_lab::detail::set_default_workers(c.workers);
    if (c.budget_mb) set_memory_budget_mb(*c.budget_mb);
}

/// Stream for `path`, or `fallback` when path is empty or "-".
class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw ResourceError("cannot open output " + path);
            os_ = file_.get();
        }
    }
    std::ostream& stream() { return *os_; }
    void close() {
        if (file_) {
            file_->close();
            if (!*file_) throw ResourceError("write failed");
        }
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_;
};

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ResourceError("cannot open output " + path);
    os << text;
    if (!os) throw ResourceError("write failed for " + path);
}

}  // namespace detail

inline int cmd_verify(const RunConfig& c, std::ostream& log) {
    const u64 lo = c.n_lo.value_or(7);
    if (!c.n_hi) throw DomainError("verify: n_hi is required");
    const u64 hi = *c.n_hi;
    if (lo % 2 == 0 || hi % 2 == 0) throw DomainError("verify: n_lo and n_hi must be odd");
    Ladder L;
    if (!c.ladder.empty()) {
        L = read_ladder(c.ladder);
        if (L.limit < hi) throw DomainError("verify: ladder limit below n_hi");
    } else {
        L = build_ladder(std::max<u64>(hi, 7), c.max_gap.value_or(ladder_default_max_gap));
    }
    if (L.max_gap + 2 > binary_desk_limit) throw DomainError("verify: ladder gaps exceed the binary desk limit");
    VerifyOptions opt;
    opt.workers = c.workers;
    if (!c.checkpoint.empty()) opt.checkpoint = c.checkpoint;
    std::unique_ptr<std::ofstream> wit;
    if (!c.witnesses.empty()) {
        wit = std::make_unique<std::ofstream>(c.witnesses, std::ios::binary);
        if (!*wit) throw ResourceError("cannot open " + c.witnesses);
        *wit << "n,p,p1,p2\n";
        opt.witnesses = wit.get();
    }
    VerifySummary s;
    try {
        s = verify_range(lo, hi, L, opt);
    } catch (const VerificationFailure& e) {
        log << "verify: FAILED: " << e.what() << '\n';
        return exit_math;
    }
    nlohmann::ordered_json j;
    j["lo"] = s.lo;
    j["hi"] = s.hi;
    j["verified"] = s.verified;
    j["all_verified"] = s.verified == (hi - lo) / 2 + 1;
    j["max_binary"] = s.max_binary;
    j["max_p1"] = s.max_p1;
    j["digest"] = s.digest;
    j["chunk"] = s.chunk;
    j["ladder"] = {{"limit", L.limit}, {"max_gap", L.max_gap}, {"rungs", L.primes.size()}, {"proth_rungs", L.proth_rungs}, {"hash", s.ladder_hash}};
    j["scale"] = {{"binary_limit", binary_desk_limit}, {"note", "desk scale, far below the ranges of the original computation"}};
    const std::string text = j.dump(2) + "\n";
    detail::write_text(c.out.empty() ? "verify_summary.json" : c.out, text);
    log << text << "throughput " << fmt(s.throughput()) << " n/s over " << fmt(s.seconds) << " s\n";
    return j["all_verified"].get<bool>() ? exit_ok : exit_math;
}

inline int cmd_expsum(const RunConfig& c, std::ostream& log) {
    if (!c.x) throw DomainError("expsum: x is required");
    if (c.points < 1) throw DomainError("expsum: points must be positive");
    if (!(c.alpha_hi >= c.alpha_lo)) throw DomainError("expsum: alpha_hi below alpha_lo");
    const Smoothing eta = smoothing_from_name(c.eta.empty() ? "eta2" : c.eta, c.kappa, c.R);
    const auto terms = weighted_terms(eta, *c.x);
    detail::Output out(c.out, log);
    write_expsum_csv_header(out.stream());
    const double step = (c.alpha_hi - c.alpha_lo) / static_cast<double>(c.points);
    for (u64 j = 0; j < c.points; ++j) {
        const double alpha = c.alpha_lo + static_cast<double>(j) * step;
        write_expsum_csv_row(out.stream(), s_eta(terms, alpha, c.workers));
    }
    out.close();
    return exit_ok;
}

inline int cmd_bounds(const RunConfig& c, std::ostream& log) {
    const u64 samples = c.samples.value_or(1000);
    if (samples == 0) throw DomainError("bounds: samples must be positive");
    const double x = c.x.value_or(1e6);
    const u64 major_r = c.r.value_or(20);
    const auto rep = minor_arc_survey(x, samples, c.seed, major_r, c.workers);
    const std::string base = c.out.empty() ? "bounds" : c.out;
    {
        detail::Output out(base + ".csv", log);
        write_survey_csv(out.stream(), rep);
        out.close();
    }
    auto summary = nlohmann::ordered_json::parse(survey_summary_json(rep));
    // Sieve ratio and a major-arc comparison at the same scale.
    const Smoothing eta2 = make_eta2();
    const u64 s = c.s.value_or(10);
    const auto sieve = prime_support_gain(s, x, prime_supported_coeffs(eta2, x), refined_factor_c_default, c.workers);
    summary["sieve"] = {{"s", s}, {"measured", sieve.measured}, {"kokoto_factor", sieve.bound}, {"holds", sieve.holds}, {"flags", sieve.flags}};
    const auto est = major_estimate(eta2, 1, 0.0, x, major_r);
    const double measured0 = std::abs(s_eta(eta2, 0.0, x, effective_cutoff, c.workers).value);
    summary["major_arc"] = {{"q", 1}, {"delta", 0.0}, {"predicted", est.main}, {"measured", measured0},
                            {"error_budget", est.error_budget}, {"flags", est.flags}};
    int status = exit_ok;
    if (c.certified) {
        detail::Output cert(base + ".certified.csv", log);
        cert.stream() << "alpha,q,delta,bound,enclosure_lo,enclosure_hi,contained\n";
        u64 escaped = 0;
        for (const auto& row : rep.rows) {
            const auto enc = certified_theorem_bound(x, row.q, row.delta);
            const bool in = enc.contains(row.bound);
            if (!in) ++escaped;
            cert.stream() << fmt(row.alpha) << ',' << row.q << ',' << fmt(row.delta) << ',' << fmt(row.bound) << ','
                          << fmt(enc.lo) << ',' << fmt(enc.hi) << ',' << (in ? "yes" : "no") << '\n';
        }
        cert.close();
        summary["certified"] = {{"rows", rep.rows.size()}, {"escaped", escaped}};
        if (escaped > 0) status = exit_math;
    }
    const std::string text = summary.dump(2) + "\n";
    detail::write_text(base + ".json", text);
    log << text;
    return status;
}

inline int cmd_reps(const RunConfig& c, std::ostream& log) {
    if (!c.n_lo || !c.n_hi) throw DomainError("reps: n_lo and n_hi are required");
    const auto rows = count_reps_range(*c.n_lo, *c.n_hi);
    detail::Output out(c.out, log);
    out.stream() << "n,unweighted,weighted,predicted_main_term,ratio,flags\n";
    for (const auto& r : rows) {
        const double c0 = singular_series(r.n).value;
        const double nd = static_cast<double>(r.n);
        const double predicted = c0 * nd * nd / 2.0;
        std::string flags;
        for (const auto& f : r.flags) flags += (flags.empty() ? "" : ";") + f;
        out.stream() << r.n << ',' << r.unweighted << ',' << fmt(r.weighted) << ',' << fmt(predicted) << ','
                     << (predicted > 0.0 ? fmt(r.weighted / predicted) : std::string("nan")) << ',' << flags << '\n';
    }
    out.close();
    return exit_ok;
}

inline int cmd_ladder_build(const RunConfig& c, std::ostream& log) {
    const u64 limit = c.limit.value_or(ladder_default_limit);
    const u64 gap = c.max_gap.value_or(ladder_default_max_gap);
    const Ladder L = build_ladder(limit, gap);
    const std::string path = c.out.empty() ? "ladder.bin" : c.out;
    write_ladder(L, path);
    nlohmann::ordered_json j{{"limit", L.limit}, {"max_gap", L.max_gap}, {"rungs", L.primes.size()},
                             {"proth_rungs", L.proth_rungs}, {"last", L.primes.back()}, {"hash", L.hash()}, {"file", path}};
    log << j.dump(2) << '\n';
    return exit_ok;
}

inline int cmd_sieve_ratio(const RunConfig& c, std::ostream& log) {
    const double x = c.x.value_or(1e5);
    const u64 s_max = c.s.value_or(10);
    if (s_max < 2) throw DomainError("sieve-ratio: s must be at least 2");
    const Smoothing eta = smoothing_from_name(c.eta.empty() ? "eta2" : c.eta, c.kappa, c.R);
    detail::Output out(c.out, log);
    write_sieve_csv_header(out.stream());
    if (c.arcs) {
        for (u64 s = 2; s <= s_max; ++s) write_sieve_csv_row(out.stream(), s, x, arcs_l2_mass(eta, x, s));
    } else {
        const auto coeffs = prime_supported_coeffs(eta, x);
        for (u64 s = 2; s <= s_max; ++s)
            write_sieve_csv_row(out.stream(), s, x, prime_support_gain(s, x, coeffs, refined_factor_c_default, c.workers));
    }
    out.close();
    return exit_ok;
}

/// Runs c.command, mapping exceptions to exit codes.
inline int run(const RunConfig& c, std::ostream& log, std::ostream& err) {
    try {
        detail::apply_globals(c);
        if (c.command == "verify") return cmd_verify(c, log);
        if (c.command == "expsum") return cmd_expsum(c, log);
        if (c.command == "bounds") return cmd_bounds(c, log);
        if (c.command == "reps") return cmd_reps(c, log);
        if (c.command == "ladder-build") return cmd_ladder_build(c, log);
        if (c.command == "sieve-ratio") return cmd_sieve_ratio(c, log);
        err << "unknown command '" << c.command << "'\n";
        return exit_usage;
    } catch (const DomainError& e) {
        err << "usage: " << e.what() << '\n';
        return exit_usage;
    } catch (const UnsupportedError& e) {
        err << "unsupported: " << e.what() << '\n';
        return exit_usage;
    } catch (const ResourceError& e) {
        err << "resource: " << e.what() << '\n';
        return exit_resource;
    } catch (const VerificationFailure& e) {
        err << "failure: " << e.what() << '\n';
        return exit_math;
    } catch (const PrecisionError& e) {
        err << "precision: " << e.what() << '\n';
        return exit_math;
    } catch (const std::bad_alloc&) {
        err << "resource: out of memory\n";
        return exit_resource;
    }
}

}  // namespace goldbach_lab::cli
