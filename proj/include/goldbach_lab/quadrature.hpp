#pragma once

// Numerical quadrature: adaptive Gauss–Kronrod (7/15) with global
// subdivision, and fixed-order Gauss–Legendre rules.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>
#include <type_traits>
#include <utility>
#include <vector>

#include "detail/kahan.hpp"
#include "errors.hpp"

namespace goldbach_lab {

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
    int intervals = 0;
    bool converged = true;
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

struct GK15 {
    static constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    static constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                     0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
};

template <class T, class F>
std::pair<T, double> gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const T fc = f(c);
    T resk = fc * GK15::wgk[7];
    T resg = fc * GK15::wg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * GK15::xgk[j];
        const T f1 = f(c - dx);
        const T f2 = f(c + dx);
        resk += (f1 + f2) * GK15::wgk[j];
        if (j % 2 == 1) resg += (f1 + f2) * GK15::wg[j / 2];
    }
    const double err = magnitude((resk - resg) * h);
    return {resk * h, err};
}

template <class T>
struct Segment {
    double a, b;
    T value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

}  // namespace detail

/// Adaptive integration over the finite intervals given by consecutive
/// breakpoints. Stops when the summed error estimate is below
/// max(abs_tol, rel_tol·|value|) or the interval budget is spent.
template <class F>
auto integrate_breaks(F&& f, const std::vector<double>& breaks, double abs_tol, double rel_tol = 0.0,
                      int max_intervals = 4000) {
    using T = std::decay_t<decltype(f(0.0))>;
    QuadResult<T> out;
    if (breaks.size() < 2) return out;
    std::priority_queue<detail::Segment<T>> heap;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        auto [v, e] = detail::gk15<T>(f, breaks[i], breaks[i + 1]);
        heap.push({breaks[i], breaks[i + 1], v, e});
    }
    auto totals = [&heap]() {
        auto copy = heap;
        T v{};
        double e = 0.0;
        while (!copy.empty()) {
            v += copy.top().value;
            e += copy.top().error;
            copy.pop();
        }
        return std::pair<T, double>{v, e};
    };
    T value{};
    double error = 0.0;
    {
        auto [v, e] = totals();
        value = v;
        error = e;
    }
    int count = static_cast<int>(heap.size());
    while (!heap.empty() && error > std::max(abs_tol, rel_tol * detail::magnitude(value))) {
        if (count >= max_intervals) {
            out.converged = false;
            break;
        }
        const auto top = heap.top();
        const double mid = 0.5 * (top.a + top.b);
        if (!(mid > top.a && mid < top.b)) {
            out.converged = false;
            break;
        }
        heap.pop();
        auto [v1, e1] = detail::gk15<T>(f, top.a, mid);
        auto [v2, e2] = detail::gk15<T>(f, mid, top.b);
        heap.push({top.a, mid, v1, e1});
        heap.push({mid, top.b, v2, e2});
        value += v1 + v2 - top.value;
        error += e1 + e2 - top.error;
        ++count;
        if (count % 64 == 0) {
            auto [v, e] = totals();
            value = v;
            error = e;
        }
    }
    // Final summation in a fixed order (by left endpoint) for reproducibility.
    std::vector<detail::Segment<T>> segs;
    while (!heap.empty()) {
        segs.push_back(heap.top());
        heap.pop();
    }
    std::sort(segs.begin(), segs.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
    T v{};
    double e = 0.0;
    for (const auto& s : segs) {
        v += s.value;
        e += s.error;
    }
    out.value = v;
    out.error = e;
    out.intervals = count;
    return out;
}

template <class F>
auto integrate(F&& f, double a, double b, double abs_tol, double rel_tol = 0.0, int max_intervals = 4000) {
    return integrate_breaks(std::forward<F>(f), std::vector<double>{a, b}, abs_tol, rel_tol, max_intervals);
}

/// Gauss–Legendre nodes and weights on [-1,1], cached per order.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline const GaussLegendreRule& gauss_legendre(int n) {
    static std::mutex mutex;
    static std::map<int, GaussLegendreRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 1) throw DomainError("gauss_legendre: order must be positive");
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
        }
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

/// Composite Gauss–Legendre: `pieces` equal panels, order n each.
template <class F>
auto gauss_legendre_integrate(F&& f, double a, double b, int n, int pieces = 1) {
    using T = std::decay_t<decltype(f(0.0))>;
    const auto& rule = gauss_legendre(n);
    T total{};
    const double width = (b - a) / pieces;
    for (int p = 0; p < pieces; ++p) {
        const double lo = a + p * width;
        const double c = lo + 0.5 * width;
        const double h = 0.5 * width;
        T part{};
        for (int i = 0; i < n; ++i) part += f(c + h * rule.nodes[i]) * rule.weights[i];
        total += part * h;
    }
    return total;
}

}  // namespace goldbach_lab
