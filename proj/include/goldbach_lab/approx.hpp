#pragma once

// Diophantine approximation: α = a/q + δ/x with |α − a/q| ≤ 1/(qQ).

#include <cmath>
#include <cstdint>
#include <numeric>

#include "arith.hpp"
#include "errors.hpp"

namespace goldbach_lab {

struct RationalApprox {
    i64 a = 0;
    u64 q = 1;
    u64 Q = 1;
    double alpha = 0.0;  // the approximated angle
    double x = 1.0;      // scale; delta = (alpha - a/q) * x
    double delta = 0.0;

    /// α − a/q, evaluated with a single rounding.
    double offset() const { return std::fma(alpha, static_cast<double>(q), -static_cast<double>(a)) / static_cast<double>(q); }

    RationalApprox with_scale(double scale) const {
        RationalApprox r = *this;
        r.x = scale;
        r.delta = offset() * scale;
        return r;
    }

    bool same_fraction(const RationalApprox& o) const { return a == o.a && q == o.q; }
};

namespace detail {

// Exact continued-fraction expansion of a dyadic double in [0,1): returns the
// last convergent with denominator <= Q.
inline std::pair<u64, u64> last_convergent(double frac, u64 Q) {
    using u128 = unsigned __int128;
    // frac = num / 2^shift exactly.
    int exp = 0;
    const double mant = std::frexp(frac, &exp);  // frac = mant * 2^exp, mant in [0.5,1)
    const u128 m = static_cast<u128>(std::ldexp(mant, 53));
    const int shift = 53 - exp;  // frac = m / 2^shift
    if (shift > 126) return {0, 1};
    u128 num = m;
    u128 den = static_cast<u128>(1) << shift;
    while (num != 0 && (num & 1) == 0 && (den & 1) == 0) {
        num >>= 1;
        den >>= 1;
    }

    // Convergents p_k/q_k with p_{-1}=1, q_{-1}=0, p_0=a0, q_0=1.
    u128 p_prev = 1, q_prev = 0;
    u128 p_cur = 0, q_cur = 1;  // a0 = 0 since frac < 1
    u128 n = num, d = den;
    while (n != 0) {
        // next partial quotient of d/n (we are expanding the reciprocal tail)
        const u128 ak = d / n;
        const u128 rem = d % n;
        if (ak > Q) break;
        const u128 q_next = ak * q_cur + q_prev;
        if (q_next > Q) break;
        const u128 p_next = ak * p_cur + p_prev;
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
        d = n;
        n = rem;
    }
    return {static_cast<u64>(p_cur), static_cast<u64>(q_cur)};
}

}  // namespace detail

/// Continued-fraction approximation: the last convergent with q <= Q, which
/// satisfies |α − a/q| < 1/(q(Q+1)). α is reduced mod 1 first and a is
/// reported in [0, q] (a = q = 1 is possible for α just below 1).
inline RationalApprox best_approx(double alpha, u64 Q) {
    if (Q < 1) throw DomainError("best_approx: Q must be >= 1");
    if (!std::isfinite(alpha)) throw DomainError("best_approx: alpha must be finite");
    if (Q > (u64{1} << 60)) throw DomainError("best_approx: Q above 2^60");
    const double fl = std::floor(alpha);
    double frac = alpha - fl;
    if (frac >= 1.0) frac = 0.0;
    auto [p, q] = frac == 0.0 ? std::pair<u64, u64>{0, 1} : detail::last_convergent(frac, Q);
    RationalApprox r;
    r.a = static_cast<i64>(p);
    r.q = q;
    r.Q = Q;
    r.alpha = frac;
    r.delta = r.offset();
    return r;
}

/// Switch to an approximation valid for the larger Q'. Distinct reduced
/// fractions are always separated by at least 1/(qq'); the integer form
/// |a q' − a' q| >= 1 is checked explicitly.
inline RationalApprox switch_approx(double alpha, u64 Qprime, const RationalApprox& current) {
    if (Qprime <= current.Q) throw DomainError("switch_approx: Q' must exceed current Q");
    RationalApprox next = best_approx(alpha, Qprime).with_scale(current.x);
    if (!next.same_fraction(current)) {
        const __int128 cross = static_cast<__int128>(current.a) * static_cast<__int128>(next.q) -
                               static_cast<__int128>(next.a) * static_cast<__int128>(current.q);
        if (cross == 0) throw VerificationFailure("switch_approx: fractions coincide but differ in representation");
    }
    return next;
}

}  // namespace goldbach_lab
