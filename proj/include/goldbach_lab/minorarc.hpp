#pragma once

// Minor arcs: Vaughan's identity, the type I and type II estimates at desk
// scale, Möbius sums with coprimality conditions, and the explicit minor-arc
// bound for S_{η₂}.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "approx.hpp"
#include "arith.hpp"
#include "detail/exact.hpp"
#include "detail/kahan.hpp"
#include "detail/parallel.hpp"
#include "errors.hpp"
#include "expsum.hpp"
#include "format.hpp"
#include "report.hpp"
#include "smoothing.hpp"

#include <json.hpp>

namespace goldbach_lab {

// ---------------------------------------------------------------------------
// Vaughan's identity

struct VaughanSplit {
    u64 n = 0;
    double U = 1.0, V = 1.0;
    double t1a = 0.0;   // (μ_{≤U} ∗ log)(n)
    double t1b = 0.0;   // (Λ_{≤V} ∗ μ_{≤U} ∗ 1)(n)
    double t2 = 0.0;    // (1 ∗ μ_{>U} ∗ Λ_{>V})(n)
    double tail = 0.0;  // Λ_{≤V}(n)

    double total() const { return t1a - t1b + t2 + tail; }
};

inline VaughanSplit vaughan_split(u64 n, double U, double V) {
    if (n < 1) throw DomainError("vaughan_split: n must be positive");
    if (!(U >= 1.0) || !(V >= 1.0)) throw DomainError("vaughan_split: U and V must be at least 1");
    VaughanSplit s;
    s.n = n;
    s.U = U;
    s.V = V;
    const auto divs = divisors(n);
    std::vector<int> mu(divs.size());
    std::vector<double> lam(divs.size());
    for (std::size_t i = 0; i < divs.size(); ++i) {
        mu[i] = moebius(divs[i]);
        lam[i] = mangoldt(divs[i]);
    }
    // Σ_{u | m, u ≤ U} μ(u) and Σ_{u | m, u > U} μ(u) for a divisor m of n.
    auto mu_sums = [&](u64 m, bool small) {
        int acc = 0;
        for (std::size_t i = 0; i < divs.size(); ++i) {
            if (divs[i] > m) break;
            if (m % divs[i]) continue;
            const bool is_small = static_cast<double>(divs[i]) <= U;
            if (is_small == small) acc += mu[i];
        }
        return acc;
    };
    detail::KahanSum t1a, t1b, t2;
    for (std::size_t i = 0; i < divs.size(); ++i) {
        const u64 d = divs[i];
        if (static_cast<double>(d) <= U && mu[i] != 0) t1a.add(mu[i] * std::log(static_cast<double>(n / d)));
        if (lam[i] == 0.0) continue;
        if (static_cast<double>(d) <= V) {
            t1b.add(lam[i] * mu_sums(n / d, true));
        } else {
            t2.add(lam[i] * mu_sums(n / d, false));
        }
    }
    s.t1a = t1a.value();
    s.t1b = t1b.value();
    s.t2 = t2.value();
    s.tail = static_cast<double>(n) <= V ? mangoldt(n) : 0.0;
    return s;
}

/// U = V = √(x / √(q·max(4, |δ|))).
inline std::pair<double, double> vaughan_parameters(double x, u64 q, double delta) {
    const double uv = x / std::sqrt(static_cast<double>(q) * std::max(4.0, std::abs(delta)));
    const double u = std::max(1.0, std::sqrt(uv));
    return {u, u};
}

// ---------------------------------------------------------------------------
// Geometric sums and the smoothed inner sum

inline double distance_to_integer(double a) { return std::abs(a - std::nearbyint(a)); }

struct GeometricTail {
    double bound = 0.0;
    double exact = 0.0;
};

/// |Σ_{n≤N} e(αn)| ≤ min(N, 1/(2‖α‖)); the exact modulus is summed directly.
inline GeometricTail geometric_tail(double alpha, u64 N) {
    if (N < 1) throw DomainError("geometric_tail: N must be positive");
    GeometricTail g;
    const double dist = distance_to_integer(alpha);
    const double Nd = static_cast<double>(N);
    g.bound = dist == 0.0 ? Nd : std::min(Nd, 0.5 / dist);
    const double a = alpha - std::floor(alpha);
    detail::ComplexKahanSum s;
    for (u64 n = 1; n <= N; ++n) s.add(detail::e_frac(detail::frac_mul(a, n)));
    g.exact = std::abs(s.value());
    return g;
}

struct InnerBound {
    double bound = 0.0;
    double branch[3] = {0.0, 0.0, 0.0};
    int active = 0;
};

/// min(x|η|₁ + |η'|₁/2, |η'|₁/(2|sin πα|), |(η'')^|_∞/(4x sin²πα)) bounding
/// |Σ_n e(αn) η(n/x)|.
inline InnerBound smoothed_inner_bound(const Smoothing& eta, double alpha, double x) {
    const auto l1 = eta.norm_l1();
    const auto d1 = eta.norm_l1_deriv();
    if (!l1 || !d1) throw UnsupportedError("smoothed_inner_bound: norms not defined for " + eta.name());
    const auto f2 = eta.sup_norm_fourier_second_deriv();
    const double s = std::abs(std::sin(std::numbers::pi * distance_to_integer(alpha)));
    InnerBound b;
    b.branch[0] = x * *l1 + *d1 / 2.0;
    b.branch[1] = s > 0.0 ? *d1 / (2.0 * s) : HUGE_VAL;
    b.branch[2] = (f2 && s > 0.0) ? *f2 / (4.0 * x * s * s) : HUGE_VAL;
    b.active = static_cast<int>(std::min_element(b.branch, b.branch + 3) - b.branch);
    b.bound = b.branch[b.active];
    return b;
}

/// |Σ_{n ≥ 1} e(αn) η(n/x)| by direct summation.
inline double smoothed_inner_exact(const Smoothing& eta, double alpha, double x) {
    const u64 top = static_cast<u64>(std::floor(eta.support().hi * x));
    const u64 lo = static_cast<u64>(std::max(1.0, std::ceil(eta.support().lo * x)));
    const double a = alpha - std::floor(alpha);
    detail::ComplexKahanSum s;
    for (u64 n = lo; n <= top; ++n) s.add(eta(static_cast<double>(n) / x) * detail::e_frac(detail::frac_mul(a, n)));
    return std::abs(s.value());
}

// ---------------------------------------------------------------------------
// Sums of min(A, B/|sin|, C/sin²) over a block of length q

enum class TripletMode { exclude_multiples, all_terms };

inline double min_triplet_bound(double A, double B, double C, u64 q, TripletMode mode) {
    if (!(A > 0.0) || !(B > 0.0) || !(C > 0.0) || q < 1) throw DomainError("min_triplet_bound: A, B, C > 0, q ≥ 1");
    const double pi = std::numbers::pi;
    const double qd = static_cast<double>(q);
    if (mode == TripletMode::all_terms) return 3.0 * A + 4.0 * qd / pi * std::sqrt(A * C);
    const double b1 = 20.0 / (3.0 * pi * pi) * C * qd * qd;
    const double b2 = 2.0 * A + 4.0 * qd / pi * std::sqrt(A * C);
    const double b3 = 2.0 * B * qd / pi * std::max(2.0, std::log(C * std::exp(3.0) * qd / (B * pi)));
    return std::min({b1, b2, b3});
}

/// Σ_{y<m≤y+q, q∤m} min(A, B/|sin παm|, C/|sin παm|²), summed directly.
inline double triplet_sum(double A, double B, double C, double alpha, u64 q, u64 y, bool exclude_multiples = true) {
    const double a = alpha - std::floor(alpha);
    double total = 0.0;
    for (u64 m = y + 1; m <= y + q; ++m) {
        if (exclude_multiples && m % q == 0) continue;
        const double s = std::abs(std::sin(std::numbers::pi * detail::frac_mul(a, m)));
        double v = A;
        if (s > 0.0) v = std::min({A, B / s, C / (s * s)});
        total += v;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Möbius sums

inline constexpr double ramare_constant = 0.8;

struct MoebiusRatio {
    double x = 0.0;
    u64 q = 1;
    double sum = 0.0;
    double bound = 0.0;
    bool holds = true;
    std::vector<std::string> flags;
};

/// Σ_{a≤x, (a,q)=1} μ(a)/a against (4/5)(q/φ(q))/log(x/q). A precomputed
/// Möbius table covering ⌊x⌋ may be supplied.
inline MoebiusRatio moebius_ratio(double x, u64 q, const std::vector<std::int8_t>* table = nullptr) {
    if (q < 1) throw DomainError("moebius_ratio: q must be positive");
    if (static_cast<double>(q) > x) throw DomainError("moebius_ratio: q must not exceed x");
    const u64 X = static_cast<u64>(std::floor(x));
    std::vector<std::int8_t> local;
    if (!table || table->size() <= X) {
        local = moebius_table(X);
        table = &local;
    }
    const auto fac = factorize(q);
    detail::KahanSum s;
    for (u64 a = 1; a <= X; ++a) {
        const int m = (*table)[a];
        if (m == 0) continue;
        bool coprime = true;
        for (const auto& [p, e] : fac)
            if (a % p == 0) {
                coprime = false;
                break;
            }
        if (coprime) s.add(m / static_cast<double>(a));
    }
    MoebiusRatio r;
    r.x = x;
    r.q = q;
    r.sum = s.value();
    const double lg = std::log(x / static_cast<double>(q));
    if (!(lg > 0.0)) {
        r.bound = HUGE_VAL;
        r.flags.emplace_back("bound undefined at log(x/q) = 0");
        return r;
    }
    r.bound = ramare_constant * static_cast<double>(q) / static_cast<double>(totient(q)) / lg;
    r.holds = std::abs(r.sum) <= r.bound;
    return r;
}

/// max over real 0 < y ≤ x of |Σ_{n≤y} μ(n)/n| / √(2/y). The partial sum is
/// constant on [n, n+1), where √(2/y) is smallest at the right end.
inline BoundReport mertens_sqrt_check(u64 x) {
    if (x < 1) throw DomainError("mertens_sqrt_check: x must be positive");
    const auto mu = moebius_table(x);
    detail::KahanSum s;
    BoundReport r;
    r.name = "mertens_sqrt";
    double worst = 0.0;
    u64 worst_n = 1;
    for (u64 n = 1; n <= x; ++n) {
        if (mu[n]) s.add(mu[n] / static_cast<double>(n));
        const double y = n < x ? static_cast<double>(n + 1) : static_cast<double>(x);
        const double ratio = std::abs(s.value()) / std::sqrt(2.0 / y);
        if (ratio > worst) {
            worst = ratio;
            worst_n = n;
        }
    }
    r.bound = 1.0;
    r.measured = worst;
    r.add_term("worst_n", static_cast<double>(worst_n));
    r.finalize();
    return r;
}

// ---------------------------------------------------------------------------
// Type I

struct TypeIConstants {
    double k1 = 1.0, k2 = 1.0, k3 = 1.0;
};

/// The three main terms (1/φ(q))·x/log(x/q)·min(1, 1/δ²),
/// (2/π)√|(η'')^|_∞·D and q·log max(D/q, q), each times a proportionality
/// constant, against |Σ_{m≤D} μ(m) Σ_n e(αmn) η(mn/x)| at α = a/q + δ/x.
inline BoundReport type_I_bound(double D, u64 q, double delta, double x, const Smoothing& eta,
                                const TypeIConstants& k = {}, i64 a = 1, bool measure = true) {
    if (q < 1) throw DomainError("type_I_bound: q must be positive");
    if (!(D < x) || !(D >= 1.0)) throw DomainError("type_I_bound: need 1 ≤ D < x");
    const auto f2 = eta.sup_norm_fourier_second_deriv();
    if (!f2) throw UnsupportedError("type_I_bound: sup of the transform of η'' undefined for " + eta.name());
    const double qd = static_cast<double>(q);
    BoundReport r;
    r.name = "type_I";
    const double t1 = k.k1 / static_cast<double>(totient(q)) * x / std::log(x / qd) * std::min(1.0, 1.0 / (delta * delta));
    const double t2 = k.k2 * 2.0 / std::numbers::pi * std::sqrt(*f2) * D;
    const double t3 = k.k3 * qd * std::log(std::max(D / qd, qd));
    r.add_term("phi_term", t1);
    r.add_term("D_term", t2);
    r.add_term("q_term", t3);
    r.bound = t1 + t2 + t3;
    r.flag("constants reconstructed");
    if (measure) {
        const u64 Dm = static_cast<u64>(std::floor(D));
        const auto mu = moebius_table(Dm);
        const u64 qa = static_cast<u64>(((a % static_cast<i64>(q)) + static_cast<i64>(q)) % static_cast<i64>(q));
        const double beta = delta / x - std::floor(delta / x);
        detail::ComplexKahanSum total;
        for (u64 m = 1; m <= Dm; ++m) {
            if (!mu[m]) continue;
            const u64 lo = static_cast<u64>(std::max(1.0, std::ceil(eta.support().lo * x / static_cast<double>(m))));
            const u64 hi = static_cast<u64>(std::floor(eta.support().hi * x / static_cast<double>(m)));
            detail::ComplexKahanSum inner;
            for (u64 n = lo; n <= hi; ++n) {
                const u64 mn = m * n;
                const double fr = static_cast<double>(mulmod(qa, mn % q, q)) / qd + detail::frac_mul(beta, mn);
                inner.add(eta(static_cast<double>(mn) / x) * detail::e_frac(fr));
            }
            total.add(static_cast<double>(mu[m]) * inner.value());
        }
        r.measured = std::abs(total.value());
    }
    r.finalize();
    return r;
}

// ---------------------------------------------------------------------------
// Type II

inline constexpr double s1_const_all = 3.0 / (std::numbers::pi * std::numbers::pi);
inline constexpr double s1_const_odd = 2.0 / (std::numbers::pi * std::numbers::pi);
inline constexpr double s1_average_all = 0.22482;
inline constexpr double s1_average_odd = 0.15107;

/// S₁(U, W) = Σ_{x/2W < m ≤ x/W} |Σ_{d>U, d|m} μ(d)|², exact.
inline double type_II_S1_exact(double U, double W, double x, bool odd_only) {
    const u64 lo = static_cast<u64>(std::floor(x / (2.0 * W))) + 1;
    const u64 hi = static_cast<u64>(std::floor(x / W));
    if (hi < lo) return 0.0;
    const u64 Ui = static_cast<u64>(std::floor(U));
    const auto mu = moebius_table(std::min(Ui, hi));
    // Σ_{d|m, d>U} μ(d) = [m = 1] − Σ_{d|m, d≤U} μ(d).
    std::vector<int> small(hi - lo + 1, 0);
    for (u64 d = 1; d <= std::min(Ui, hi); ++d) {
        if (!mu[d]) continue;
        for (u64 m = (lo + d - 1) / d * d; m <= hi; m += d) small[m - lo] += mu[d];
    }
    double s = 0.0;
    for (u64 m = lo; m <= hi; ++m) {
        if (odd_only && m % 2 == 0) continue;
        const int v = (m == 1 ? 1 : 0) - small[m - lo];
        s += static_cast<double>(v) * v;
    }
    return s;
}

inline BoundReport type_II_S1(double U, double W, double x, bool odd_only) {
    if (!(x / (2.0 * W) >= 1.0)) throw DomainError("type_II_S1: need x/(2W) ≥ 1");
    BoundReport r;
    r.name = odd_only ? "type_II_S1_odd" : "type_II_S1";
    r.measured = type_II_S1_exact(U, W, x, odd_only);
    const double c = odd_only ? s1_const_odd : s1_const_all;
    r.bound = c * x / W;
    r.add_term("main_constant", c);
    r.add_term("measured_constant", r.measured / (x / W));
    r.flag("main term only");
    r.finalize();
    return r;
}

/// Average of S₁(U, W)/(x/W) over W log-uniformly spaced in [W_lo, W_hi],
/// against the averaged constant.
inline BoundReport type_II_S1_average(double U, double x, double W_lo, double W_hi, int points, bool odd_only) {
    if (points < 2 || !(W_hi > W_lo) || !(W_lo > 0.0)) throw DomainError("type_II_S1_average: bad W grid");
    detail::KahanSum acc;
    for (int i = 0; i < points; ++i) {
        const double W = W_lo * std::pow(W_hi / W_lo, static_cast<double>(i) / (points - 1));
        acc.add(type_II_S1_exact(U, W, x, odd_only) / (x / W));
    }
    BoundReport r;
    r.name = odd_only ? "type_II_S1_average_odd" : "type_II_S1_average";
    r.measured = acc.value() / points;
    r.bound = odd_only ? s1_average_odd : s1_average_all;
    r.flag("main term only");
    r.finalize();
    return r;
}

/// S₂(V, W) = Σ_{x/2W ≤ m ≤ x/W} |Σ_{max(V, W/2) ≤ n ≤ W} Λ(n) e(αmn)|², exact.
inline double type_II_S2_exact(double V, double W, double alpha, double x) {
    const u64 mlo = static_cast<u64>(std::ceil(x / (2.0 * W)));
    const u64 mhi = static_cast<u64>(std::floor(x / W));
    const u64 nlo = static_cast<u64>(std::ceil(std::max(V, W / 2.0)));
    const u64 nhi = static_cast<u64>(std::floor(W));
    std::vector<u64> ns;
    std::vector<double> lam;
    for (u64 n = std::max<u64>(nlo, 2); n <= nhi; ++n) {
        const double l = mangoldt(n);
        if (l != 0.0) {
            ns.push_back(n);
            lam.push_back(l);
        }
    }
    const double a = alpha - std::floor(alpha);
    detail::KahanSum total;
    for (u64 m = std::max<u64>(mlo, 1); m <= mhi; ++m) {
        const double am = detail::frac_mul(a, m);
        detail::ComplexKahanSum inner;
        for (std::size_t i = 0; i < ns.size(); ++i) inner.add(lam[i] * detail::e_frac(detail::frac_mul(am, ns[i])));
        total.add(std::norm(inner.value()));
    }
    return total.value();
}

inline BoundReport type_II_S2(double V, double W, double alpha, u64 q, double delta, double x, bool measure = true) {
    if (q < 1) throw DomainError("type_II_S2: q must be positive");
    BoundReport r;
    r.name = "type_II_S2";
    const double qd = static_cast<double>(q);
    const double phi = static_cast<double>(totient(q));
    const double ad = std::abs(delta);
    if (ad > 4.0) {
        r.flag("branch:delta");
        double gain = 1.0;
        if (W > ad * qd) {
            gain = std::log(W) / std::log(W / (ad * qd));
        } else {
            r.flag("no-gain branch");
        }
        r.add_term("log_factor", gain);
        r.bound = gain * (x / (ad * phi) + qd / phi * W / 2.0) * (W / 2.0);
    } else {
        r.flag("branch:weighted-sieve");
        double gain = 1.0;
        if (W > 2.0 * qd) {
            gain = std::log(W) / std::log(W / (2.0 * qd));
        } else {
            r.flag("no-gain branch");
        }
        r.add_term("log_factor", gain);
        r.bound = gain * (x / (4.0 * phi) + qd * W / phi) * (W / 2.0);
    }
    if (measure) r.measured = type_II_S2_exact(V, W, alpha, x);
    r.finalize();
    return r;
}

// ---------------------------------------------------------------------------
// The minor-arc bound for S_{η₂}

inline constexpr double theorem_x0 = 2.16e20;
inline constexpr double theorem_R_coeff = 0.27125;
inline constexpr double theorem_R_const = 0.41415;
inline constexpr double theorem_R_denominator = 2.004;
inline constexpr double theorem_half = 0.5;
inline constexpr double theorem_sqrt_coeff = 2.5;
inline constexpr double theorem_power_coeff = 3.2;
inline constexpr double theorem_large_coeff = 0.2727;
inline constexpr double theorem_large_power = 1218.0;

enum class TheoremBranch { small_q, large_q };

struct TheoremBound {
    double x = 0.0;
    u64 q = 1;
    double delta = 0.0;
    double delta0 = 2.0;
    double term_main = 0.0;
    double term_sqrt = 0.0;
    double term_L = 0.0;
    double term_power = 0.0;
    double total = 0.0;
    TheoremBranch branch = TheoremBranch::small_q;
    bool valid = false;  // x ≥ x₀
    std::vector<std::string> flags;
};

inline const char* branch_name(TheoremBranch b) { return b == TheoremBranch::small_q ? "small_q" : "large_q"; }

inline double theorem_R(double x, double t) {
    return theorem_R_coeff *
               std::log(1.0 + std::log(4.0 * t) / (2.0 * std::log(9.0 * std::cbrt(x) / (theorem_R_denominator * t)))) +
           theorem_R_const;
}

inline double theorem_L(double delta0, u64 q) {
    const double qd = static_cast<double>(q);
    const double ratio = static_cast<double>(totient(q)) / qd;
    return (1.75 * std::log(delta0) + 3.25 * std::log(qd) + 80.0 / 9.0) / ratio +
           (80.0 / 9.0) * std::log(qd) + (16.0 / 9.0) * std::log(delta0) + 111.0 / 5.0;
}

/// q > x^{1/3}/6, decided exactly as (6q)³ > x.
inline bool theorem_large_q(double x, u64 q) {
    const detail::cpp_int six_q = detail::cpp_int(6) * q;
    return detail::cpp_rational(six_q * six_q * six_q) > detail::exact_rational(x);
}

inline TheoremBound theorem_bound_branch(double x, u64 q, double delta, TheoremBranch branch) {
    if (q < 1) throw DomainError("theorem_bound: q must be positive");
    if (!(x >= 2.0)) throw DomainError("theorem_bound: x must be at least 2");
    TheoremBound b;
    b.x = x;
    b.q = q;
    b.delta = delta;
    b.delta0 = std::max(2.0, std::abs(delta) / 4.0);
    b.branch = branch;
    b.valid = x >= theorem_x0;
    if (!b.valid) b.flags.emplace_back("outside stated validity (x < x0)");
    if (branch == TheoremBranch::large_q) {
        const double lx = std::log(x);
        b.term_main = theorem_large_coeff * std::pow(x, 5.0 / 6.0) * std::pow(lx, 1.5);
        b.term_power = theorem_large_power * std::pow(x, 2.0 / 3.0) * lx;
    } else {
        const double qd = static_cast<double>(q);
        const double d0 = b.delta0;
        const double t = d0 * qd;
        const double phi = static_cast<double>(totient(q));
        if (!(9.0 * std::cbrt(x) / (theorem_R_denominator * t) > 1.0)) b.flags.emplace_back("R outside its range");
        b.term_main = (theorem_R(x, t) * std::log(t) + theorem_half) / std::sqrt(d0 * phi) * x;
        b.term_sqrt = theorem_sqrt_coeff * x / std::sqrt(d0 * qd);
        b.term_L = 2.0 * x / (d0 * qd) * theorem_L(d0, q);
        b.term_power = theorem_power_coeff * std::pow(x, 5.0 / 6.0);
    }
    b.total = b.term_main + b.term_sqrt + b.term_L + b.term_power;
    return b;
}

inline TheoremBound theorem_bound(double x, u64 q, double delta) {
    return theorem_bound_branch(x, q, delta, theorem_large_q(x, q) ? TheoremBranch::large_q : TheoremBranch::small_q);
}

// ---------------------------------------------------------------------------
// Desk-scale survey of |S_{η₂}(α, x)| against the bound

struct SurveyRow {
    double alpha = 0.0;
    i64 a = 0;
    u64 q = 1;
    double delta = 0.0;
    double measured = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    TheoremBranch branch = TheoremBranch::small_q;
    bool major = false;   // excluded from ratio statistics
    bool adversarial = false;
    bool valid = false;
};

struct SurveyReport {
    double x = 0.0;
    std::size_t samples = 0;
    u64 major_r = 20;
    std::vector<SurveyRow> rows;
    std::vector<std::string> flags;
};

/// One survey row for S_{η}(α, x) with the terms of η₂ at scale x: writes
/// 2α = a/q + δ/x with q ≤ (3/4)x^{2/3} and classifies the point as major
/// when q ≤ major_r and |δ| ≤ 8·major_r/q.
inline SurveyRow survey_point(const WeightedTerms& terms, double alpha, u64 major_r) {
    const double x = terms.x;
    const u64 Qi = static_cast<u64>(std::floor(0.75 * std::pow(x, 2.0 / 3.0)));
    SurveyRow row;
    row.alpha = alpha;
    const auto ap = best_approx(2.0 * alpha, std::max<u64>(Qi, 1));
    row.a = ap.a;
    row.q = ap.q;
    row.delta = ap.offset() * x;
    row.measured = std::abs(s_eta(terms, alpha, 1).value);
    const auto tb = theorem_bound(x, row.q, row.delta);
    row.bound = tb.total;
    row.branch = tb.branch;
    row.valid = tb.valid;
    row.ratio = row.measured / row.bound;
    row.major = row.q <= major_r && std::abs(row.delta) <= 8.0 * static_cast<double>(major_r) / static_cast<double>(row.q);
    return row;
}

/// Samples α uniformly and near rationals of medium denominator, computes
/// |S_{η₂}(α, x)| exactly, and writes 2α = a/q + δ/x with q ≤ (3/4)x^{2/3}.
/// Points with q ≤ major_r and |δ| ≤ 8·major_r/q are classified major.
inline SurveyReport minor_arc_survey(double x, std::size_t sample_count, std::uint64_t seed = 1,
                                     u64 major_r = 20, unsigned workers = detail::default_workers()) {
    if (!(x >= 100.0) || x > 1e7) throw DomainError("minor_arc_survey: x must lie in [100, 1e7]");
    SurveyReport rep;
    rep.x = x;
    rep.samples = sample_count;
    rep.major_r = major_r;
    if (x < theorem_x0) rep.flags.emplace_back("x below x0: ratios are observations only");
    const auto eta = make_eta2();
    const auto terms = weighted_terms(eta, x);
    const double Q = 0.75 * std::pow(x, 2.0 / 3.0);
    const u64 Qi = static_cast<u64>(std::floor(Q));

    std::mt19937_64 rng(seed);
    auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<double> alphas(sample_count);
    std::vector<bool> adversarial(sample_count, false);
    const u64 qmax = std::max<u64>(major_r + 2, std::min<u64>(Qi, 2000));
    for (std::size_t i = 0; i < sample_count; ++i) {
        if (i % 2 == 0) {
            alphas[i] = unit();
            continue;
        }
        adversarial[i] = true;
        const u64 q = major_r + 1 + static_cast<u64>(unit() * static_cast<double>(qmax - major_r));
        u64 a = 1 + static_cast<u64>(unit() * static_cast<double>(q - 1));
        while (std::gcd(a, q) != 1) a = a % (q - 1) + 1;
        const double delta = (unit() * 2.0 - 1.0) * 16.0;
        const double two_alpha = static_cast<double>(a) / static_cast<double>(q) + delta / x;
        alphas[i] = 0.5 * two_alpha + (unit() < 0.5 ? 0.0 : 0.5);
        alphas[i] -= std::floor(alphas[i]);
    }

    rep.rows.resize(sample_count);
    detail::parallel_for(sample_count, workers, [&](std::size_t i) {
        rep.rows[i] = survey_point(terms, alphas[i], major_r);
        rep.rows[i].adversarial = adversarial[i];
    });
    return rep;
}

inline void write_survey_csv(std::ostream& os, const SurveyReport& rep) {
    os << "alpha,a,q,delta,measured,bound,ratio,branch,class,validity\n";
    for (const auto& r : rep.rows) {
        os << fmt(r.alpha) << ',' << r.a << ',' << r.q << ',' << fmt(r.delta) << ',' << fmt(r.measured) << ','
           << fmt(r.bound) << ',' << fmt(r.ratio) << ',' << branch_name(r.branch) << ','
           << (r.major ? "major" : "minor") << ',' << (r.valid ? "valid" : "outside_validity") << '\n';
    }
}

/// Quantiles of the ratio over minor-arc rows.
inline std::string survey_summary_json(const SurveyReport& rep) {
    std::vector<double> ratios;
    std::size_t major = 0, exceed = 0;
    for (const auto& r : rep.rows) {
        if (r.major) {
            ++major;
            continue;
        }
        ratios.push_back(r.ratio);
        if (r.ratio > 1.0) ++exceed;
    }
    std::sort(ratios.begin(), ratios.end());
    auto quantile = [&](double p) {
        if (ratios.empty()) return 0.0;
        const auto k = static_cast<std::size_t>(std::floor(p * static_cast<double>(ratios.size() - 1)));
        return ratios[k];
    };
    nlohmann::ordered_json j;
    j["x"] = rep.x;
    j["samples"] = rep.samples;
    j["minor_rows"] = ratios.size();
    j["major_rows"] = major;
    j["ratio_above_1"] = exceed;
    j["quantiles"] = {{"min", quantile(0.0)},  {"p10", quantile(0.1)}, {"median", quantile(0.5)},
                      {"p90", quantile(0.9)}, {"max", quantile(1.0)}};
    j["validity"] = rep.x >= theorem_x0 ? "valid" : "outside stated validity (x < x0)";
    j["flags"] = rep.flags;
    return j.dump(2);
}

}  // namespace goldbach_lab
