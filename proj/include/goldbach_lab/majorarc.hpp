#pragma once

// Major arcs: arc geometry around rationals of small denominator, the
// main-term predictor with its error envelope, the singular series and the
// smoothing double integral that govern the major-arc contribution.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "arith.hpp"
#include "detail/exact.hpp"
#include "errors.hpp"
#include "expsum.hpp"
#include "quadrature.hpp"
#include "report.hpp"
#include "smoothing.hpp"

#include <json.hpp>

namespace goldbach_lab {

struct MajorArc {
    i64 a = 0;
    u64 q = 1;
    double halfwidth = 0.0;

    double center() const { return static_cast<double>(a) / static_cast<double>(q); }
};

struct ArcSet {
    std::vector<MajorArc> arcs;
    u64 r = 1;
    double c0 = 8.0;
    double x = 1.0;
    double total_measure = 0.0;

    std::vector<ArcInterval> intervals() const {
        std::vector<ArcInterval> out;
        out.reserve(arcs.size());
        for (const auto& arc : arcs) out.push_back({arc.center() - arc.halfwidth, arc.center() + arc.halfwidth});
        return out;
    }

    std::string to_json() const {
        nlohmann::ordered_json j;
        j["r"] = r;
        j["c0"] = c0;
        j["x"] = x;
        j["total_measure"] = total_measure;
        auto& list = j["arcs"] = nlohmann::ordered_json::array();
        for (const auto& arc : arcs) list.push_back({{"a", arc.a}, {"q", arc.q}, {"halfwidth", arc.halfwidth}});
        return j.dump();
    }
};

inline constexpr u64 major_arcs_list_limit = 20'000'000;

/// Arcs around every a/q with q ≤ r, gcd(a, q) = 1, of halfwidth c0·r/(qx).
/// Consecutive Farey fractions a/q < a'/q' are 1/(qq') apart, so the arcs
/// are disjoint exactly when c0·r·(q + q') < x for every neighbouring pair;
/// this is checked in rational arithmetic.
inline ArcSet build_major_arcs(u64 r, double c0, double x) {
    if (r < 1) throw DomainError("build_major_arcs: r must be at least 1");
    if (!(c0 > 0.0)) throw DomainError("build_major_arcs: c0 must be positive");
    if (!(x > 0.0)) throw DomainError("build_major_arcs: x must be positive");
    if (r > 100000) throw ResourceError("build_major_arcs: r too large to list");
    double count_estimate = 1.0;
    for (u64 q = 2; q <= r; ++q) count_estimate += static_cast<double>(totient(q));
    if (count_estimate > static_cast<double>(major_arcs_list_limit))
        throw ResourceError("build_major_arcs: too many arcs to list");

    const auto c0r = detail::exact_rational(c0) * detail::cpp_rational(r);
    const auto xr = detail::exact_rational(x);
    auto disjoint = [&](u64 q1, u64 q2) { return c0r * detail::cpp_rational(q1 + q2) < xr; };

    ArcSet set;
    set.r = r;
    set.c0 = c0;
    set.x = x;
    // Farey sequence of order r from 0/1 up to (but excluding) 1/1.
    u64 a = 0, b = 1, c = 1, d = r;
    detail::KahanSum measure;
    while (true) {
        set.arcs.push_back({static_cast<i64>(a), b, c0 * static_cast<double>(r) / (static_cast<double>(b) * x)});
        measure.add(2.0 * set.arcs.back().halfwidth);
        if (!disjoint(b, d)) throw DomainError("build_major_arcs: arcs overlap at this scale");
        if (c == 1 && d == 1) break;
        const u64 k = (r + b) / d;
        const u64 na = c, nb = d;
        c = k * c - a;
        d = k * d - b;
        a = na;
        b = nb;
    }
    set.total_measure = measure.value();
    return set;
}

/// (2c0·r/x)·Σ_{q ≤ r} φ(q)/q, the measure of the arc set computed from the
/// counting formula.
inline double major_arcs_measure_formula(u64 r, double c0, double x) {
    detail::KahanSum s;
    for (u64 q = 1; q <= r; ++q) s.add(static_cast<double>(totient(q)) / static_cast<double>(q));
    return 2.0 * c0 * static_cast<double>(r) / x * s.value();
}

// ---------------------------------------------------------------------------
// Main term and error envelope

inline constexpr double major_error_const = 5.281e-22;
inline constexpr double major_error_q_coeff = 650400.0;
inline constexpr double major_error_tail = 112.0;
inline constexpr u64 major_r_default = 300000;
inline constexpr double major_x_min = 1e8;

struct MajorArcEstimate {
    double main = 0.0;
    double error_budget = 0.0;
    u64 q = 1;
    double delta = 0.0;
    double x = 0.0;
    std::vector<std::string> flags;

    bool has_flag(const std::string& f) const { return std::find(flags.begin(), flags.end(), f) != flags.end(); }
};

/// |E| bound 5.281·10⁻²² + (650400/√q + 112)/√x.
inline double major_error_coefficient(u64 q, double x) {
    return major_error_const + (major_error_q_coeff / std::sqrt(static_cast<double>(q)) + major_error_tail) / std::sqrt(x);
}

inline MajorArcEstimate major_estimate(const Smoothing& eta, u64 q, double delta, double x,
                                       u64 r = major_r_default) {
    if (q == 0) throw DomainError("major_estimate: q must be positive");
    MajorArcEstimate est;
    est.q = q;
    est.delta = delta;
    est.x = x;
    if (q == 1) est.main = (eta.fourier(-delta) * x).real();
    est.error_budget = major_error_coefficient(q, x) * x;
    if (x < major_x_min) est.flags.emplace_back("outside stated validity");
    if (q > r) est.flags.emplace_back("q above r");
    if (std::abs(delta) > 4.0 * static_cast<double>(r) / static_cast<double>(q))
        est.flags.emplace_back("delta outside 4r/q");
    if (eta.kind() != SmoothingKind::gaussian) est.flags.emplace_back("shape-only: constants reconstructed");
    return est;
}

/// Heights to which zeros of L(s, χ), χ mod q, are taken as verified.
/// Stored for reference; no computation here consumes them.
inline double verified_height(u64 q) {
    const double base = 1e8 / static_cast<double>(q);
    if (q % 2 == 1) return base;
    return std::max(base, 200.0 + 7.5e7 / static_cast<double>(q));
}

// ---------------------------------------------------------------------------
// Singular series

struct SingularSeries {
    double value = 0.0;        // product over p ≤ cutoff
    double tail_radius = 0.0;  // |log(C₀ / value)| ≤ tail_radius
    u64 cutoff = 0;
};

/// C₀ = Π_{p|n} (1 − 1/(p−1)²) Π_{p∤n} (1 + 1/(p−1)³). Every prime factor
/// of n enters exactly; the product over p ∤ n is truncated at the cutoff,
/// and the omitted log-factors lie in [0, 1/(2(P−1)²)]. If n has a
/// composite cofactor too large to split, each of its k prime factors adds
/// at most 2/(P−1)² to the radius instead.
inline SingularSeries singular_series(u64 n, u64 prime_cutoff = 10000) {
    if (n < 1) throw DomainError("singular_series: n must be positive");
    if (prime_cutoff < 100) throw DomainError("singular_series: cutoff must be at least 100");
    SingularSeries out;
    out.cutoff = prime_cutoff;
    if (n % 2 == 0) return out;
    detail::KahanSum logs;
    u64 rest = n;
    for (u64 p : primes_upto(prime_cutoff)) {
        const double pm1 = static_cast<double>(p - 1);
        if (n % p == 0) {
            logs.add(std::log1p(-1.0 / (pm1 * pm1)));
            while (rest % p == 0) rest /= p;
        } else {
            logs.add(std::log1p(1.0 / (pm1 * pm1 * pm1)));
        }
    }
    const double P = static_cast<double>(prime_cutoff);
    double radius = 1.0 / (2.0 * (P - 1.0) * (P - 1.0));
    // Prime factors above the cutoff replace their (1 + 1/(p−1)³) factor.
    auto large_factor = [&](u64 p) {
        const double pm1 = static_cast<double>(p - 1);
        logs.add(std::log1p(-1.0 / (pm1 * pm1)) - std::log1p(1.0 / (pm1 * pm1 * pm1)));
    };
    if (rest > 1) {
        if (is_prime_u64(rest)) {
            large_factor(rest);
        } else if (rest < (u64{1} << 50)) {
            for (const auto& [p, e] : factorize(rest)) large_factor(p);
        } else {
            int k = 0;
            for (double m = static_cast<double>(rest); m > 1.0; m /= (P + 1.0)) ++k;
            radius += 2.0 * k / ((P - 1.0) * (P - 1.0));
        }
    }
    out.value = std::exp(logs.value());
    out.tail_radius = radius;
    return out;
}

// ---------------------------------------------------------------------------
// C_{η∘,η*}

struct CEtaIntegral {
    double value = 0.0;
    double error = 0.0;
    double concentrated = 0.0;  // |η*|₁ · ∫ η(t) η(ratio − t) dt
    double gap = 0.0;           // |value − concentrated|
};

namespace detail {

inline std::vector<double> clipped_breaks(const std::vector<double>& breaks, double lo, double hi) {
    std::vector<double> out{lo};
    for (double b : breaks)
        if (b > lo && b < hi) out.push_back(b);
    out.push_back(hi);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// ∫ a(t) b(s − t) dt.
inline double additive_convolution(const Smoothing& a, const Smoothing& b, double s, double tol) {
    const double lo = std::max(a.support().lo, s - b.support().hi);
    const double hi = std::min(a.support().hi, s - b.support().lo);
    if (!(hi > lo)) return 0.0;
    std::vector<double> br = a.breakpoints();
    for (double v : b.breakpoints()) br.push_back(s - v);
    const auto breaks = clipped_breaks(br, lo, hi);
    return integrate_breaks([&](double t) { return a(t) * b(s - t); }, breaks, tol, 1e-13).value;
}

}  // namespace detail

/// ∫∫ η₁(t₁) η₂(t₂) η*(ratio − t₁ − t₂) dt₁ dt₂, written as
/// ∫ η*(u) (η₁∗η₂)(ratio − u) du.
inline CEtaIntegral c_eta_integral(const Smoothing& eta1, const Smoothing& eta2, const Smoothing& eta_star,
                                   double ratio) {
    if (!(ratio >= 0.0)) throw DomainError("c_eta_integral: ratio must be nonnegative");
    CEtaIntegral out;
    const double ulo = std::max(eta_star.support().lo, ratio - eta1.support().hi - eta2.support().hi);
    const double uhi = std::min(eta_star.support().hi, ratio - eta1.support().lo - eta2.support().lo);
    if (uhi > ulo) {
        std::vector<double> br = eta_star.breakpoints();
        for (double v : eta1.breakpoints())
            for (double w : eta2.breakpoints()) br.push_back(ratio - v - w);
        const auto breaks = detail::clipped_breaks(br, ulo, uhi);
        const auto res = integrate_breaks(
            [&](double u) { return eta_star(u) * detail::additive_convolution(eta1, eta2, ratio - u, 1e-13); },
            breaks, 1e-12, 1e-10);
        out.value = res.value;
        out.error = res.error;
    }
    const double l1 = eta_star.norm_l1().value_or(0.0);
    out.concentrated = l1 * detail::additive_convolution(eta1, eta2, ratio, 1e-13);
    out.gap = std::abs(out.value - out.concentrated);
    return out;
}

inline CEtaIntegral c_eta_integral(const Smoothing& eta_circ, const Smoothing& eta_star, double ratio) {
    return c_eta_integral(eta_circ, eta_circ, eta_star, ratio);
}

// ---------------------------------------------------------------------------
// Major-arc integral against its main term

/// Relative tolerance for the comparison below, fixed after runs at
/// n ≈ 10⁵, 10⁶, 10⁷.
inline constexpr double major_integral_tolerance = 0.05;

struct MajorIntegralInputs {
    Smoothing eta_plus;
    Smoothing eta_star;
    Smoothing eta_circ;
};

/// Predicted C₀·C_{η∘,η*}·x² against the measured integral of
/// S_{η₊}² S_{η*} e(−αn) over the arcs. measured/bound hold the relative
/// gap and the tolerance.
inline BoundReport major_integral_estimate(u64 n, double x, const ArcSet& arcs, const MajorIntegralInputs& in,
                                           ArcIntegralOptions opt = {}) {
    BoundReport r;
    r.name = "major_integral";
    r.bound = major_integral_tolerance;
    if (arcs.arcs.empty()) {
        r.add_term("measured", 0.0);
        r.flag("no arcs: comparison skipped");
        r.measured = 0.0;
        r.finalize();
        return r;
    }
    const auto c0 = singular_series(n);
    const auto ceta = c_eta_integral(in.eta_circ, in.eta_star, static_cast<double>(n) / x);
    const double predicted = c0.value * ceta.value * x * x;
    const auto measured = arc_integral(in.eta_plus, in.eta_star, n, x, arcs.intervals(), opt);
    r.add_term("predicted", predicted);
    r.add_term("measured", measured.value.real());
    r.add_term("measured_imag", measured.value.imag());
    r.add_term("quadrature_error", measured.error_estimate);
    r.add_term("singular_series", c0.value);
    r.add_term("c_eta", ceta.value);
    if (predicted == 0.0) {
        r.flag("prediction zero (even n)");
        r.measured = 0.0;
        r.finalize();
        return r;
    }
    r.measured = std::abs(measured.value.real() - predicted) / std::abs(predicted);
    r.finalize();
    if (std::abs(x - static_cast<double>(n) / 2.0) > 0.05 * x) r.flag("x not near n/2");
    return r;
}

}  // namespace goldbach_lab
