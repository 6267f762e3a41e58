#pragma once

#include <complex>

namespace goldbach_lab::detail {

// Neumaier variant of compensated summation.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double t = sum + v;
        if ((sum >= 0 ? sum : -sum) >= (v >= 0 ? v : -v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }

    void add(const KahanSum& other) {
        add(other.sum);
        add(other.comp);
    }

    double value() const { return sum + comp; }
};

struct ComplexKahanSum {
    KahanSum re;
    KahanSum im;

    void add(std::complex<double> v) {
        re.add(v.real());
        im.add(v.imag());
    }

    void add(const ComplexKahanSum& other) {
        re.add(other.re);
        im.add(other.im);
    }

    std::complex<double> value() const { return {re.value(), im.value()}; }
};

}  // namespace goldbach_lab::detail
