#pragma once

// Interval reruns of floating-point bound evaluations.

#include <cmath>
#include <string>

#include "arith.hpp"
#include "minorarc.hpp"
#include "rigor.hpp"

namespace goldbach_lab {

/// Encloses theorem_bound(x, q, delta).total, every constant taken as its
/// exact decimal value.
inline rigor::Interval certified_theorem_bound(double x, u64 q, double delta) {
    using rigor::Expr;
    using rigor::Interval;
    using rigor::constant_decimal;
    const Expr X = rigor::variable("x");
    const Expr logx = rigor::log(X);
    auto xpow = [&](int num, int den) { return rigor::exp(Expr(static_cast<double>(num)) / Expr(static_cast<double>(den)) * logx); };
    rigor::Bindings env{{"x", Interval(x)}};
    Expr total(0.0);
    if (theorem_large_q(x, q)) {
        total = constant_decimal("0.2727") * xpow(5, 6) * logx * rigor::sqrt(logx) +
                constant_decimal("1218") * xpow(2, 3) * logx;
    } else {
        const double d0 = std::max(2.0, std::abs(delta) / 4.0);
        const Expr D0(d0);
        const Expr Q(static_cast<double>(q));
        const Expr PHI(static_cast<double>(totient(q)));
        const Expr t = D0 * Q;
        const Expr R = constant_decimal("0.27125") *
                           rigor::log(Expr(1.0) + rigor::log(Expr(4.0) * t) /
                                                     (Expr(2.0) * rigor::log(Expr(9.0) * xpow(1, 3) /
                                                                             (constant_decimal("2.004") * t)))) +
                       constant_decimal("0.41415");
        const Expr c80_9 = Expr(80.0) / Expr(9.0);
        const Expr L = (constant_decimal("1.75") * rigor::log(D0) + constant_decimal("3.25") * rigor::log(Q) + c80_9) /
                           (PHI / Q) +
                       c80_9 * rigor::log(Q) + Expr(16.0) / Expr(9.0) * rigor::log(D0) + Expr(111.0) / Expr(5.0);
        total = (R * rigor::log(t) + constant_decimal("0.5")) / rigor::sqrt(D0 * PHI) * X +
                constant_decimal("2.5") * X / rigor::sqrt(D0 * Q) + Expr(2.0) * X / (D0 * Q) * L +
                constant_decimal("3.2") * xpow(5, 6);
    }
    return rigor::interval_eval(total, env);
}

}  // namespace goldbach_lab
