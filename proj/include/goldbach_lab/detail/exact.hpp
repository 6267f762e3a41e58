#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>

#include "../errors.hpp"

namespace goldbach_lab::detail {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

/// The exact rational value of a finite double.
inline cpp_rational exact_rational(double v) {
    if (!std::isfinite(v)) throw DomainError("exact_rational: non-finite value");
    int exp = 0;
    const double m = std::frexp(v, &exp);
    const auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    cpp_rational r(mant);
    exp -= 53;
    if (exp >= 0) {
        r *= cpp_rational(cpp_int(1) << exp);
    } else {
        r /= cpp_rational(cpp_int(1) << (-exp));
    }
    return r;
}

/// v − ⌊v⌋ ∈ [0, 1).
inline cpp_rational frac_part(const cpp_rational& v) {
    const cpp_int num = boost::multiprecision::numerator(v);
    const cpp_int den = boost::multiprecision::denominator(v);
    cpp_int r = num % den;
    if (r < 0) r += den;
    return cpp_rational(r, den);
}

}  // namespace goldbach_lab::detail
