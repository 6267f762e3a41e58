#pragma once

// Dirichlet characters with exact values: χ(n) = e(k/L) stored as the
// integer index k, L the exponent of (Z/qZ)*.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>
#include <numeric>
#include <vector>

#include "arith.hpp"
#include "errors.hpp"

namespace goldbach_lab {

inline u64 character_limit_default() { return 10000; }

/// (Z/qZ)* written as a product of cyclic factors, with discrete logs of
/// every residue in every factor.
class CharacterGroup {
public:
    enum class FactorKind { odd_prime_power, two_sign, two_five };

    struct Factor {
        FactorKind kind;
        u64 p;
        int e;        // q contains p^e
        u64 order;    // order of this cyclic factor
    };

    static constexpr std::uint32_t no_log = std::numeric_limits<std::uint32_t>::max();

    explicit CharacterGroup(u64 q) : q_(q) {
        if (q == 0) throw DomainError("CharacterGroup: modulus must be positive");
        coprime_.assign(q, 0);
        for (u64 n = 0; n < q; ++n) coprime_[n] = std::gcd(n, q) == 1 ? 1 : 0;
        if (q == 1) coprime_[0] = 1;
        for (const auto& [p, e] : factorize(q)) {
            u64 pe = 1;
            for (int i = 0; i < e; ++i) pe *= p;
            if (p == 2) {
                if (e == 1) continue;
                add_factor({FactorKind::two_sign, 2, e, 2}, pe, two_sign_logs(pe));
                if (e >= 3) add_factor({FactorKind::two_five, 2, e, pe / 4}, pe, two_five_logs(pe));
            } else {
                add_factor({FactorKind::odd_prime_power, p, e, pe / p * (p - 1)}, pe, odd_logs(p, pe));
            }
        }
        exponent_ = 1;
        for (const auto& f : factors_) exponent_ = std::lcm(exponent_, f.order);
    }

    u64 modulus() const { return q_; }
    u64 exponent() const { return exponent_; }
    const std::vector<Factor>& factors() const { return factors_; }
    bool coprime(u64 n) const { return coprime_[n % q_] != 0; }
    std::uint32_t log(std::size_t factor, u64 n) const { return logs_[factor][n % q_]; }

    /// Deterministic generator choice for odd p: the smallest primitive root
    /// mod p that remains primitive mod p^2 (hence mod every p^k).
    static u64 generator(u64 p) {
        const u64 phi = p - 1;
        const auto fac = factorize(phi);
        for (u64 g = 2; g < p; ++g) {
            bool ok = true;
            for (const auto& [r, k] : fac)
                if (powmod(g, phi / r, p) == 1) {
                    ok = false;
                    break;
                }
            if (ok && powmod(g, p - 1, p * p) != 1) return g;
        }
        return 1;  // p = 2 is handled separately
    }

private:
    void add_factor(Factor f, u64 pe, const std::vector<std::uint32_t>& table_mod_pe) {
        std::vector<std::uint32_t> table(q_);
        for (u64 n = 0; n < q_; ++n) table[n] = coprime_[n] ? table_mod_pe[n % pe] : no_log;
        factors_.push_back(f);
        logs_.push_back(std::move(table));
    }

    static std::vector<std::uint32_t> odd_logs(u64 p, u64 pe) {
        std::vector<std::uint32_t> t(pe, no_log);
        const u64 g = generator(p);
        const u64 order = pe / p * (p - 1);
        u64 v = 1;
        for (u64 k = 0; k < order; ++k) {
            t[v] = static_cast<std::uint32_t>(k);
            v = v * g % pe;
        }
        return t;
    }

    // n ≡ (−1)^a 5^b mod 2^e: the sign part a.
    static std::vector<std::uint32_t> two_sign_logs(u64 pe) {
        std::vector<std::uint32_t> t(pe, no_log);
        for (u64 n = 1; n < pe; n += 2) t[n] = (n % 4 == 1) ? 0 : 1;
        return t;
    }

    static std::vector<std::uint32_t> two_five_logs(u64 pe) {
        std::vector<std::uint32_t> t(pe, no_log);
        u64 v = 1;
        for (u64 b = 0; b < pe / 4; ++b) {
            t[v] = static_cast<std::uint32_t>(b);
            t[pe - v] = static_cast<std::uint32_t>(b);
            v = v * 5 % pe;
        }
        return t;
    }

    u64 q_;
    u64 exponent_ = 1;
    std::vector<Factor> factors_;
    std::vector<std::vector<std::uint32_t>> logs_;
    std::vector<std::uint8_t> coprime_;
};

/// e(k/L) with exact values at multiples of a quarter turn.
inline std::complex<double> root_of_unity(u64 k, u64 L) {
    k %= L;
    if (k == 0) return {1.0, 0.0};
    if (4 * k == L) return {0.0, 1.0};
    if (2 * k == L) return {-1.0, 0.0};
    if (4 * k == 3 * L) return {0.0, -1.0};
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(L);
    return {std::cos(angle), std::sin(angle)};
}

class DirichletCharacter {
public:
    DirichletCharacter(std::shared_ptr<const CharacterGroup> group, std::vector<u64> exps)
        : group_(std::move(group)), exps_(std::move(exps)) {
        compute_conductor();
    }

    u64 modulus() const { return group_->modulus(); }
    u64 conductor() const { return conductor_; }
    bool primitive() const { return conductor_ == modulus(); }
    u64 denominator() const { return group_->exponent(); }
    const std::vector<u64>& exponents() const { return exps_; }

    /// Root-of-unity index k with χ(n) = e(k/denominator()), or -1 if χ(n)=0.
    i64 index(u64 n) const {
        if (!group_->coprime(n)) return -1;
        const u64 L = group_->exponent();
        u64 k = 0;
        const auto& fs = group_->factors();
        for (std::size_t i = 0; i < fs.size(); ++i) {
            const u64 term = (exps_[i] * group_->log(i, n)) % fs[i].order;
            k = (k + term * (L / fs[i].order)) % L;
        }
        return static_cast<i64>(k);
    }

    i64 index(i64 n) const {
        const i64 q = static_cast<i64>(modulus());
        return index(static_cast<u64>(((n % q) + q) % q));
    }

    std::complex<double> operator()(u64 n) const {
        const i64 k = index(n);
        return k < 0 ? std::complex<double>{0.0, 0.0} : root_of_unity(static_cast<u64>(k), denominator());
    }

    std::vector<std::complex<double>> values() const {
        std::vector<std::complex<double>> v(modulus());
        for (u64 n = 0; n < modulus(); ++n) v[n] = (*this)(n);
        return v;
    }

    bool is_principal() const {
        for (auto e : exps_)
            if (e) return false;
        return true;
    }

    bool is_real() const {
        const auto& fs = group_->factors();
        for (std::size_t i = 0; i < fs.size(); ++i)
            if ((2 * exps_[i]) % fs[i].order) return false;
        return true;
    }

    DirichletCharacter conj() const {
        std::vector<u64> e(exps_.size());
        const auto& fs = group_->factors();
        for (std::size_t i = 0; i < fs.size(); ++i) e[i] = (fs[i].order - exps_[i]) % fs[i].order;
        return DirichletCharacter(group_, std::move(e));
    }

    /// The primitive character mod conductor() inducing this one.
    DirichletCharacter primitive_character() const {
        auto g = std::make_shared<const CharacterGroup>(conductor_);
        std::vector<u64> e;
        const auto& fs = group_->factors();
        for (const auto& gf : g->factors()) {
            for (std::size_t i = 0; i < fs.size(); ++i) {
                if (gf.p != fs[i].p || gf.kind != fs[i].kind) continue;
                e.push_back(exps_[i] / (fs[i].order / gf.order));
            }
        }
        return DirichletCharacter(g, std::move(e));
    }

    /// τ(χ) = Σ_{b mod q} χ(b) e(b/q).
    std::complex<double> gauss_sum() const {
        const u64 q = modulus();
        std::complex<double> s{0.0, 0.0};
        for (u64 b = 0; b < q; ++b) {
            const i64 k = index(b);
            if (k < 0) continue;
            s += root_of_unity(static_cast<u64>(k), denominator()) * root_of_unity(b, q);
        }
        return s;
    }

    const std::shared_ptr<const CharacterGroup>& group() const { return group_; }

private:
    // Exponent f with p^f the conductor contribution of factor i (for the
    // 2-part the sign and five factors are combined by the caller).
    int component_exponent(std::size_t i) const {
        const auto& f = group_->factors()[i];
        const u64 j = exps_[i];
        switch (f.kind) {
            case CharacterGroup::FactorKind::odd_prime_power: {
                if (j == 0) return 0;
                int v = 0;
                for (u64 t = j; t % f.p == 0 && v < f.e - 1; t /= f.p) ++v;
                return f.e - v;
            }
            case CharacterGroup::FactorKind::two_five: {
                if (j == 0) return 0;
                int v = 0;
                for (u64 t = j; t % 2 == 0 && v < f.e - 2; t /= 2) ++v;
                return f.e - v;
            }
            case CharacterGroup::FactorKind::two_sign:
                return j == 0 ? 0 : 2;
        }
        return 0;
    }

    void compute_conductor() {
        const auto& fs = group_->factors();
        if (exps_.size() != fs.size()) throw DomainError("DirichletCharacter: exponent count mismatch");
        conductor_ = 1;
        int two_exp = 0;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            const int f = component_exponent(i);
            if (fs[i].p == 2) {
                two_exp = std::max(two_exp, f);
            } else {
                for (int k = 0; k < f; ++k) conductor_ *= fs[i].p;
            }
        }
        conductor_ <<= two_exp;
    }

    std::shared_ptr<const CharacterGroup> group_;
    std::vector<u64> exps_;
    u64 conductor_ = 1;
};

/// All φ(q) characters mod q; the principal character comes first.
inline std::vector<DirichletCharacter> characters_mod(u64 q, u64 limit = character_limit_default()) {
    if (q == 0) throw DomainError("characters_mod: q must be positive");
    if (q > limit) throw ResourceError("characters_mod: q above configured limit");
    auto group = std::make_shared<const CharacterGroup>(q);
    const auto& fs = group->factors();
    std::vector<DirichletCharacter> out;
    std::vector<u64> e(fs.size(), 0);
    while (true) {
        out.emplace_back(group, e);
        std::size_t i = 0;
        for (; i < fs.size(); ++i) {
            if (++e[i] < fs[i].order) break;
            e[i] = 0;
        }
        if (i == fs.size()) break;
    }
    return out;
}

}  // namespace goldbach_lab
