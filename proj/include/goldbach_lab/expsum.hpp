#pragma once

// Prime exponential sums S_η(α, x) = Σ Λ(n) e(αn) η(n/x), their character
// twists, representation counts by convolution, and integrals of
// S_{η₊}² S_{η*} e(−αn) over unions of arcs.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "approx.hpp"
#include "arith.hpp"
#include "budget.hpp"
#include "characters.hpp"
#include "detail/kahan.hpp"
#include "detail/parallel.hpp"
#include "errors.hpp"
#include "fft.hpp"
#include "format.hpp"
#include "report.hpp"
#include "smoothing.hpp"

namespace goldbach_lab {

struct ExpSum {
    std::complex<double> value{0.0, 0.0};
    double x = 0.0;
    double alpha = 0.0;
    std::string eta;
    u64 terms = 0;
    double cutoff = effective_cutoff;
    double abs_sum = 0.0;  // Σ |Λ(n) η(n/x)|, the trivial bound
};

/// Rows (alpha, re, im, abs).
inline void write_expsum_csv_header(std::ostream& os) { os << "alpha,re,im,abs\n"; }

inline void write_expsum_csv_row(std::ostream& os, const ExpSum& s) {
    os << fmt(s.alpha) << ',' << fmt(s.value.real()) << ',' << fmt(s.value.imag()) << ',' << fmt(std::abs(s.value))
       << '\n';
}

/// Λ(n) η(n/x) for the prime powers n where |η(n/x)| exceeds the cutoff,
/// in ascending n. Reusable across many angles.
struct WeightedTerms {
    double x = 0.0;
    std::string eta;
    double cutoff = effective_cutoff;
    std::vector<u64> n;
    std::vector<double> w;
    double abs_sum = 0.0;
};

inline WeightedTerms weighted_terms(const Smoothing& eta, double x, double cutoff = effective_cutoff) {
    if (!(x >= 2.0)) throw DomainError("weighted_terms: x must be at least 2");
    const double top = eta.support().hi * x;
    if (!(top < 4.0e12)) throw ResourceError("weighted_terms: summation range too large");
    const u64 M = static_cast<u64>(std::floor(top));
    const double est_terms = static_cast<double>(M) / std::max(1.0, std::log(static_cast<double>(M) + 2.0)) * 1.3 + 64;
    require_memory(static_cast<std::uint64_t>(est_terms * 32.0 + static_cast<double>(M)), "weighted_terms");
    const auto pp = prime_powers_upto(std::max<u64>(M, 2));
    WeightedTerms out;
    out.x = x;
    out.eta = eta.name();
    out.cutoff = cutoff;
    detail::KahanSum abs_sum;
    for (std::size_t i = 0; i < pp->n.size() && pp->n[i] <= M; ++i) {
        const double e = eta(static_cast<double>(pp->n[i]) / x);
        if (!(std::abs(e) > cutoff)) continue;
        out.n.push_back(pp->n[i]);
        out.w.push_back(pp->lambda[i] * e);
        abs_sum.add(std::abs(pp->lambda[i] * e));
    }
    out.abs_sum = abs_sum.value();
    return out;
}

namespace detail {

inline constexpr std::size_t expsum_chunk = std::size_t{1} << 15;

/// Fractional part of α·n in [0, 1), using the exact product error.
inline double frac_mul(double alpha, u64 n) {
    const double nd = static_cast<double>(n);
    const double p = alpha * nd;
    const double e = std::fma(alpha, nd, -p);
    double f = (p - std::floor(p)) + e;
    f -= std::floor(f);
    return f;
}

inline std::complex<double> e_frac(double f) {
    const double t = 2.0 * std::numbers::pi * f;
    return {std::cos(t), std::sin(t)};
}

/// Σ_i w_i · coef(i) · e(phase(i)) over fixed chunks, merged in chunk order.
template <class Term>
std::complex<double> chunked_sum(std::size_t count, unsigned workers, Term&& term) {
    const std::size_t chunks = (count + expsum_chunk - 1) / expsum_chunk;
    std::vector<ComplexKahanSum> partial(chunks);
    parallel_for(chunks, workers, [&](std::size_t c) {
        const std::size_t lo = c * expsum_chunk;
        const std::size_t hi = std::min(count, lo + expsum_chunk);
        ComplexKahanSum acc;
        for (std::size_t i = lo; i < hi; ++i) acc.add(term(i));
        partial[c] = acc;
    });
    ComplexKahanSum total;
    for (const auto& p : partial) total.add(p);
    return total.value();
}

inline ExpSum finish(const WeightedTerms& t, double alpha, std::complex<double> value) {
    ExpSum s;
    s.value = value;
    s.x = t.x;
    s.alpha = alpha;
    s.eta = t.eta;
    s.terms = t.n.size();
    s.cutoff = t.cutoff;
    s.abs_sum = t.abs_sum;
    if (std::abs(value) > t.abs_sum * (1.0 + 1e-12) + 1e-300)
        throw VerificationFailure("exponential sum exceeds its trivial bound");
    return s;
}

}  // namespace detail

inline ExpSum s_eta(const WeightedTerms& t, double alpha, unsigned workers = detail::default_workers()) {
    const double a = alpha - std::floor(alpha);
    const auto v = detail::chunked_sum(t.n.size(), workers,
                                       [&](std::size_t i) { return t.w[i] * detail::e_frac(detail::frac_mul(a, t.n[i])); });
    return detail::finish(t, alpha, v);
}

/// S_η(α, x) by direct summation.
inline ExpSum s_eta(const Smoothing& eta, double alpha, double x, double cutoff = effective_cutoff,
                    unsigned workers = detail::default_workers()) {
    return s_eta(weighted_terms(eta, x, cutoff), alpha, workers);
}

/// S_η(a/q + δ/x, x) with the rational part of the phase reduced exactly.
inline ExpSum s_eta_rational(const WeightedTerms& t, i64 a, u64 q, double delta,
                             unsigned workers = detail::default_workers()) {
    if (q == 0) throw DomainError("s_eta_rational: q must be positive");
    const u64 ar = static_cast<u64>(((a % static_cast<i64>(q)) + static_cast<i64>(q)) % static_cast<i64>(q));
    const double beta = delta / t.x;
    const double b = beta - std::floor(beta);
    const auto v = detail::chunked_sum(t.n.size(), workers, [&](std::size_t i) {
        const double fr = static_cast<double>(mulmod(ar, t.n[i] % q, q)) / static_cast<double>(q);
        return t.w[i] * detail::e_frac(fr + detail::frac_mul(b, t.n[i]));
    });
    return detail::finish(t, static_cast<double>(a) / static_cast<double>(q) + beta, v);
}

inline ExpSum s_eta_rational(const Smoothing& eta, i64 a, u64 q, double delta, double x,
                             double cutoff = effective_cutoff, unsigned workers = detail::default_workers()) {
    return s_eta_rational(weighted_terms(eta, x, cutoff), a, q, delta, workers);
}

/// S_{η,χ}(δ/x, x) = Σ Λ(n) χ(n) e(δn/x) η(n/x).
inline ExpSum s_eta_chi(const WeightedTerms& t, const DirichletCharacter& chi, double delta,
                        unsigned workers = detail::default_workers()) {
    const auto vals = chi.values();
    const u64 q = chi.modulus();
    const double beta = delta / t.x;
    const double b = beta - std::floor(beta);
    const auto v = detail::chunked_sum(t.n.size(), workers, [&](std::size_t i) {
        const auto c = vals[t.n[i] % q];
        if (c == std::complex<double>{0.0, 0.0}) return std::complex<double>{0.0, 0.0};
        return t.w[i] * c * detail::e_frac(detail::frac_mul(b, t.n[i]));
    });
    return detail::finish(t, beta, v);
}

inline ExpSum s_eta_chi(const Smoothing& eta, const DirichletCharacter& chi, double delta, double x,
                        double cutoff = effective_cutoff, unsigned workers = detail::default_workers()) {
    return s_eta_chi(weighted_terms(eta, x, cutoff), chi, delta, workers);
}

/// Coefficient c_χ = χ(a) τ(χ̄) / φ(q) of the primitive character χ* of
/// modulus d | q in the expansion of S_η(a/q + δ/x) (with χ mod q the
/// character induced by χ*).
struct CharacterCoefficient {
    u64 d = 1;
    std::complex<double> c{0.0, 0.0};
    double bound = 0.0;  // √d / φ(q)
};

/// Compares S_η(a/q + δ/x, x) against Σ_χ c_χ S_{η,χ*}(δ/x, x). The two
/// differ only at n sharing a factor with q (prime powers of p | q), which
/// are accounted for separately; the report's bound is that accounting plus
/// a rounding allowance.
inline BoundReport linear_combination_check(const Smoothing& eta, i64 a, u64 q, double delta, double x,
                                            std::vector<CharacterCoefficient>* coefficients = nullptr,
                                            u64 char_limit = character_limit_default()) {
    if (q == 0) throw DomainError("linear_combination_check: q must be positive");
    const u64 ar = static_cast<u64>(((a % static_cast<i64>(q)) + static_cast<i64>(q)) % static_cast<i64>(q));
    if (std::gcd(ar, q) != 1 && q != 1) throw DomainError("linear_combination_check: gcd(a, q) must be 1");
    const auto t = weighted_terms(eta, x);
    const auto lhs = s_eta_rational(t, a, q, delta);
    const auto chars = characters_mod(q, char_limit);
    const double phi = static_cast<double>(totient(q));

    detail::ComplexKahanSum rhs;
    double coeff_abs = 0.0;
    bool coeff_ok = true;
    for (const auto& chi : chars) {
        const auto cbar = chi.conj();
        const auto c = chi(ar) * cbar.gauss_sum() / phi;
        const auto prim = chi.primitive_character();
        const double bound = std::sqrt(static_cast<double>(prim.modulus())) / phi;
        if (std::abs(c) > bound + 1e-12) coeff_ok = false;
        if (coefficients) coefficients->push_back({prim.modulus(), c, bound});
        coeff_abs += std::abs(c);
        rhs.add(c * s_eta_chi(t, prim, delta).value);
    }

    // Terms with gcd(n, q) > 1 appear on the left with weight e(an/q) and on
    // the right through primitive characters of conductor d coprime to n.
    const auto primes_q = factorize(q);
    detail::KahanSum gcd_mass;
    for (std::size_t i = 0; i < t.n.size(); ++i) {
        for (const auto& [p, e] : primes_q)
            if (t.n[i] % p == 0) {
                gcd_mass.add(std::abs(t.w[i]));
                break;
            }
    }

    BoundReport r;
    r.name = "linear_combination";
    r.measured = std::abs(lhs.value - rhs.value());
    r.add_term("gcd_terms", gcd_mass.value() * (1.0 + coeff_abs));
    r.add_term("rounding", 1e-10 * t.abs_sum * (1.0 + coeff_abs));
    r.bound = gcd_mass.value() * (1.0 + coeff_abs) + 1e-10 * t.abs_sum * (1.0 + coeff_abs);
    r.finalize();
    if (!coeff_ok) {
        r.flag("coefficient above sqrt(d)/phi(q)");
        r.holds = false;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Representation counts

struct RepCount {
    u64 n = 0;
    double weighted = 0.0;
    u64 unweighted = 0;
    std::vector<std::string> flags;
};

/// Three weights f_i(m) = Λ(m) η_i(m/x). Without one, the weights are the
/// sharp truncation Λ(m)·1_{m ≤ n}.
struct WeightTriple {
    Smoothing e1, e2, e3;
    double x = 1.0;
};

enum class RepPath { dft, brute };

inline constexpr u64 reps_limit_dft = 10'000'000;
inline constexpr u64 reps_limit_brute = 10'000;

namespace detail {

inline std::vector<double> rep_weights(const std::optional<WeightTriple>& w, int slot, u64 upto,
                                       const PrimePowers& pp) {
    std::vector<double> f(upto + 1, 0.0);
    for (std::size_t i = 0; i < pp.n.size() && pp.n[i] <= upto; ++i) {
        double e = 1.0;
        if (w) {
            const Smoothing& s = slot == 0 ? w->e1 : slot == 1 ? w->e2 : w->e3;
            e = s(static_cast<double>(pp.n[i]) / w->x);
        }
        f[pp.n[i]] = pp.lambda[i] * e;
    }
    return f;
}

}  // namespace detail

/// Representation counts for every n in [n_lo, n_hi]. Unweighted counts are
/// ordered prime triples; weighted counts are (f₁∗f₂∗f₃)(n).
inline std::vector<RepCount> count_reps_range(u64 n_lo, u64 n_hi, const std::optional<WeightTriple>& weights = {},
                                              RepPath path = RepPath::dft) {
    if (n_lo < 7) throw DomainError("count_reps: n must be at least 7");
    if (n_hi < n_lo) throw DomainError("count_reps: empty range");
    const u64 limit = path == RepPath::dft ? reps_limit_dft : reps_limit_brute;
    if (n_hi > limit) throw ResourceError("count_reps: n above configured limit " + std::to_string(limit));

    const auto pp = prime_powers_upto(n_hi);
    const auto flags = prime_flags(n_hi);
    std::vector<RepCount> out(n_hi - n_lo + 1);
    for (u64 n = n_lo; n <= n_hi; ++n) {
        out[n - n_lo].n = n;
        if (n % 2 == 0) out[n - n_lo].flags.push_back("even n");
    }

    std::vector<double> f[3];
    for (int k = 0; k < 3; ++k) f[k] = detail::rep_weights(weights, k, n_hi, *pp);

    if (path == RepPath::dft) {
        const auto counts = cube_counts_exact(flags, n_hi);
        const auto conv = convolve3_real(f[0], f[1], f[2], n_hi);
        for (u64 n = n_lo; n <= n_hi; ++n) {
            out[n - n_lo].unweighted = counts[n];
            out[n - n_lo].weighted = conv[n];
        }
        return out;
    }

    // Brute force: pair table, then one lookup per third summand.
    std::vector<u64> r2(n_hi + 1, 0);
    std::vector<u64> primes;
    for (u64 p = 2; p <= n_hi; ++p)
        if (flags[p]) primes.push_back(p);
    for (u64 p1 : primes)
        for (u64 p2 : primes) {
            if (p1 + p2 > n_hi) break;
            ++r2[p1 + p2];
        }
    std::vector<u64> support;
    for (u64 m = 1; m <= n_hi; ++m)
        if (f[0][m] != 0.0 || f[1][m] != 0.0 || f[2][m] != 0.0) support.push_back(m);
    std::vector<double> w2(n_hi + 1, 0.0);
    for (u64 m1 : support)
        for (u64 m2 : support) {
            if (m1 + m2 > n_hi) break;
            w2[m1 + m2] += f[0][m1] * f[1][m2];
        }
    for (u64 n = n_lo; n <= n_hi; ++n) {
        u64 c = 0;
        for (u64 p : primes) {
            if (p >= n) break;
            c += r2[n - p];
        }
        detail::KahanSum w;
        for (u64 m3 : support) {
            if (m3 >= n) break;
            w.add(w2[n - m3] * f[2][m3]);
        }
        out[n - n_lo].unweighted = c;
        out[n - n_lo].weighted = w.value();
    }
    return out;
}

inline RepCount count_reps(u64 n, const std::optional<WeightTriple>& weights = {}, RepPath path = RepPath::dft) {
    return count_reps_range(n, n, weights, path).front();
}

// ---------------------------------------------------------------------------
// Full-circle L² and arc integrals on the DFT grid

struct FullCircleL2 {
    double dft = 0.0;     // (1/N) Σ_j |S(j/N)|²
    double direct = 0.0;  // Σ Λ(n)² η(n/x)²
    std::size_t N = 0;
};

/// ∫_{R/Z} |S_η(α, x)|² dα computed on a DFT grid longer than the support
/// (exact by orthogonality), alongside the coefficient-side sum.
inline FullCircleL2 l2_full_circle(const Smoothing& eta, double x) {
    const auto t = weighted_terms(eta, x);
    const u64 top = t.n.empty() ? 1 : t.n.back();
    const std::size_t N = next_pow2(static_cast<std::size_t>(top) + 2);
    require_memory(static_cast<std::uint64_t>(N) * 24, "l2_full_circle");
    std::vector<double> fold(N, 0.0);
    detail::KahanSum direct;
    for (std::size_t i = 0; i < t.n.size(); ++i) {
        fold[t.n[i] % N] += t.w[i];
        direct.add(t.w[i] * t.w[i]);
    }
    const HalfSpectrum Y(std::move(fold));
    detail::KahanSum grid;
    for (std::size_t j = 0; j < N; ++j) grid.add(std::norm(Y.positive(j)));
    return {grid.value() / static_cast<double>(N), direct.value(), N};
}

/// A closed sub-interval [lo, hi] of R/Z, hi − lo < 1; lo may be negative.
struct ArcInterval {
    double lo = 0.0;
    double hi = 0.0;
};

struct ArcIntegralOptions {
    std::size_t N = 0;              // 0: smallest alias-free power of two meeting the density
    double points_per_arc = 8.0;    // grid points across the narrowest arc
    double target_abs_error = 0.0;  // 0: no target
    bool complement = false;        // integrate over R/Z minus the union instead
    double cutoff = effective_cutoff;
};

struct ArcIntegral {
    std::complex<double> value{0.0, 0.0};
    double error_estimate = 0.0;  // |I_N − I_{N/2}|
    std::complex<double> full_circle{0.0, 0.0};
    std::size_t N = 0;
    u64 grid_points = 0;
};

namespace detail {

/// Merged index ranges [a, b] (inclusive, 0 ≤ a ≤ b < N) of grid points j
/// with j/N inside some arc.
inline std::vector<std::pair<std::size_t, std::size_t>> arc_index_ranges(const std::vector<ArcInterval>& arcs,
                                                                         std::size_t N) {
    const auto Ni = static_cast<i64>(N);
    std::vector<std::pair<i64, i64>> raw;
    for (const auto& arc : arcs) {
        if (!(arc.hi >= arc.lo)) throw DomainError("arc_integral: arc with hi < lo");
        if (arc.hi - arc.lo >= 1.0) {
            raw.emplace_back(0, Ni - 1);
            continue;
        }
        const i64 a = static_cast<i64>(std::ceil(arc.lo * static_cast<double>(N)));
        const i64 b = static_cast<i64>(std::floor(arc.hi * static_cast<double>(N)));
        if (b < a) continue;
        const i64 shift = static_cast<i64>(std::floor(static_cast<double>(a) / static_cast<double>(N))) * Ni;
        const i64 a0 = a - shift, b0 = b - shift;
        if (b0 < Ni) {
            raw.emplace_back(a0, b0);
        } else {
            raw.emplace_back(a0, Ni - 1);
            raw.emplace_back(0, std::min(b0 - Ni, Ni - 1));
        }
    }
    std::sort(raw.begin(), raw.end());
    std::vector<std::pair<std::size_t, std::size_t>> merged;
    for (const auto& [a, b] : raw) {
        if (!merged.empty() && static_cast<i64>(merged.back().second) + 1 >= a) {
            merged.back().second = std::max<std::size_t>(merged.back().second, static_cast<std::size_t>(b));
        } else {
            merged.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
        }
    }
    return merged;
}

inline std::vector<std::pair<std::size_t, std::size_t>> complement_ranges(
    const std::vector<std::pair<std::size_t, std::size_t>>& ranges, std::size_t N) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t next = 0;
    for (const auto& [a, b] : ranges) {
        if (a > next) out.emplace_back(next, a - 1);
        next = b + 1;
    }
    if (next < N) out.emplace_back(next, N - 1);
    return out;
}

}  // namespace detail

/// ∫ S_{η₊}(α, x)² S_{η*}(α, x) e(−αn) dα over a union of arcs, by the
/// rectangle rule on the N-point grid j/N. The full-circle value is exact
/// when N exceeds the support of the triple convolution.
inline ArcIntegral arc_integral(const Smoothing& eta_plus, const Smoothing& eta_star, u64 n, double x,
                                const std::vector<ArcInterval>& arcs, const ArcIntegralOptions& opt = {}) {
    ArcIntegral out;
    if (arcs.empty() && !opt.complement) return out;

    double min_width = 1.0;
    for (const auto& a : arcs) min_width = std::min(min_width, a.hi - a.lo);
    const double support = (2.0 * eta_plus.support().hi + eta_star.support().hi) * x;
    std::size_t N = opt.N;
    if (N == 0) {
        N = next_pow2(static_cast<std::size_t>(std::max(support, static_cast<double>(n))) + 2);
        if (min_width > 0.0)
            N = std::max(N, next_pow2(static_cast<std::size_t>(std::ceil(opt.points_per_arc / min_width))));
    } else if (N & (N - 1)) {
        throw DomainError("arc_integral: grid length must be a power of two");
    }
    if (min_width > 0.0 && static_cast<double>(N) * min_width < opt.points_per_arc)
        throw PrecisionError("arc_integral: grid too coarse for the narrowest arc",
                             opt.points_per_arc / (static_cast<double>(N) * min_width));
    require_memory(static_cast<std::uint64_t>(N) * 16 + 64, "arc_integral");

    const auto tp = weighted_terms(eta_plus, x, opt.cutoff);
    const auto ts = weighted_terms(eta_star, x, opt.cutoff);
    auto spectrum = [N](const WeightedTerms& t) {
        std::vector<double> fold(N, 0.0);
        for (std::size_t i = 0; i < t.n.size(); ++i) fold[t.n[i] % N] += t.w[i];
        return HalfSpectrum(std::move(fold));
    };
    const HalfSpectrum Sp = spectrum(tp);
    const HalfSpectrum Ss = spectrum(ts);

    const u64 nN = n % N;
    auto g = [&](std::size_t j) {
        const auto sp = Sp.positive(j);
        const u64 k = (N - static_cast<std::size_t>(mulmod(j, nN, N))) % N;
        return sp * sp * Ss.positive(j) * root_of_unity(k, N);
    };

    auto ranges = detail::arc_index_ranges(arcs, N);
    if (opt.complement) ranges = detail::complement_ranges(ranges, N);

    detail::ComplexKahanSum fine, coarse, total;
    u64 points = 0;
    for (const auto& [a, b] : ranges)
        for (std::size_t j = a; j <= b; ++j) {
            const auto v = g(j);
            fine.add(v);
            if (j % 2 == 0) coarse.add(v);
            ++points;
        }
    for (std::size_t j = 0; j < N; ++j) total.add(g(j));

    const double Nd = static_cast<double>(N);
    out.value = fine.value() / Nd;
    out.error_estimate = std::abs(out.value - 2.0 * coarse.value() / Nd);
    out.full_circle = total.value() / Nd;
    out.N = N;
    out.grid_points = points;
    if (opt.target_abs_error > 0.0 && out.error_estimate > opt.target_abs_error)
        throw PrecisionError("arc_integral: quadrature error above target", out.error_estimate);
    return out;
}

}  // namespace goldbach_lab
