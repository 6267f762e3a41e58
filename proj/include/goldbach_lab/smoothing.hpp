#pragma once

// Smoothing weights η on [0, ∞), their norms, Fourier and Mellin
// transforms, Mellin convolution, and the constructions η₊ and η_*.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "fft.hpp"
#include "format.hpp"
#include "quadrature.hpp"
#include "report.hpp"

namespace goldbach_lab {

inline constexpr double effective_cutoff = 1e-15;

enum class SmoothingKind { gaussian, t2_gaussian, eta1, eta2, eta_circ, h, h_R, eta_plus, eta_star, sharp, custom };

inline const char* kind_name(SmoothingKind k) {
    switch (k) {
        case SmoothingKind::gaussian: return "gaussian";
        case SmoothingKind::t2_gaussian: return "t2_gaussian";
        case SmoothingKind::eta1: return "eta1";
        case SmoothingKind::eta2: return "eta2";
        case SmoothingKind::eta_circ: return "eta_circ";
        case SmoothingKind::h: return "h";
        case SmoothingKind::h_R: return "h_R";
        case SmoothingKind::eta_plus: return "eta_plus";
        case SmoothingKind::eta_star: return "eta_star";
        case SmoothingKind::sharp: return "sharp";
        case SmoothingKind::custom: return "custom";
    }
    return "unknown";
}

struct Support {
    double lo = 0.0;
    double hi = 0.0;
    bool compact = true;  // false: hi is the effective cutoff where |η| < 1e-15
};

/// Band-limited approximation h_R of h and the diagnostics of the
/// approximation, shared by the h_R and η₊ smoothings built from it.
struct EtaPlusData {
    double R = 200.0;
    double u0 = 0.0;   // table starts at u = log t = u0
    double du = 0.0;
    std::vector<double> table;  // h_R(e^{u0 + k du})
    double l2_log_error = 0.0;  // (∫ |h_R − h|² dt/t)^{1/2}
    double l2_eta_error = 0.0;  // |η₊ − η∘|₂ on [0, ∞)
    double sup_h = 0.0;         // max |h_R| over the table

    double h_R(double t) const {
        if (!(t > 0.0)) return 0.0;
        const double pos = (std::log(t) - u0) / du;
        if (pos < 2.0 || pos > static_cast<double>(table.size()) - 4.0) return 0.0;
        // Six-point Lagrange interpolation on the oversampled grid.
        const auto i = static_cast<std::ptrdiff_t>(std::floor(pos));
        const double f = pos - static_cast<double>(i);
        double acc = 0.0;
        for (int j = -2; j <= 3; ++j) {
            double w = 1.0;
            for (int k = -2; k <= 3; ++k)
                if (k != j) w *= (f - k) / static_cast<double>(j - k);
            acc += w * table[static_cast<std::size_t>(i + j)];
        }
        return acc;
    }
};

class Smoothing {
public:
    struct Spec {
        SmoothingKind kind = SmoothingKind::custom;
        std::string name;
        std::function<double(double)> f;
        Support support;
        std::vector<double> breaks;  // points where η or a derivative is not smooth (incl. support ends)
        std::optional<double> l1, l2, l1_deriv;
        bool fourier_defined = true;
        std::function<std::complex<double>(double)> fourier_closed;  // optional
        bool sup_fourier2_defined = false;
        std::function<double()> sup_fourier2_compute;  // lazily evaluated
        double param = 0.0;
        std::shared_ptr<const EtaPlusData> plus;
    };

    explicit Smoothing(Spec spec) : impl_(std::make_shared<Impl>(std::move(spec))) {}

    SmoothingKind kind() const { return impl_->spec.kind; }
    const std::string& name() const { return impl_->spec.name; }
    const Support& support() const { return impl_->spec.support; }
    const std::vector<double>& breakpoints() const { return impl_->spec.breaks; }
    double param() const { return impl_->spec.param; }
    const std::shared_ptr<const EtaPlusData>& plus_data() const { return impl_->spec.plus; }

    double operator()(double t) const {
        const auto& s = impl_->spec.support;
        if (!(t >= s.lo) || t > s.hi) return 0.0;
        return impl_->spec.f(t);
    }
    double eval(double t) const { return (*this)(t); }

    std::optional<double> norm_l1() const { return impl_->spec.l1; }
    std::optional<double> norm_l2() const { return impl_->spec.l2; }
    /// Total variation of η extended by zero to t < 0.
    std::optional<double> norm_l1_deriv() const { return impl_->spec.l1_deriv; }
    /// sup_ξ |(η'')^(ξ)| = sup_ξ 4π²ξ²|η̂(ξ)|, η taken on [0, ∞).
    std::optional<double> sup_norm_fourier_second_deriv() const {
        if (!impl_->spec.sup_fourier2_defined) return std::nullopt;
        std::call_once(impl_->sup_once, [this] { impl_->sup_value = impl_->spec.sup_fourier2_compute(); });
        return impl_->sup_value;
    }

    bool fourier_defined() const { return impl_->spec.fourier_defined; }

    /// η̂(ξ) = ∫ e(−tξ) η(t) dt.
    std::complex<double> fourier(double xi) const {
        const auto& sp = impl_->spec;
        if (!sp.fourier_defined) throw UnsupportedError("fourier: integral diverges for " + sp.name);
        if (sp.fourier_closed) return sp.fourier_closed(xi);
        return fourier_by_quadrature(xi);
    }

    std::complex<double> fourier_by_quadrature(double xi) const {
        const auto& sp = impl_->spec;
        std::vector<double> br = sp.breaks;
        const double step = 0.5 / (std::abs(xi) + 0.5);
        for (double t = sp.support.lo; t < sp.support.hi; t += step) br.push_back(t);
        br.push_back(sp.support.hi);
        std::sort(br.begin(), br.end());
        br.erase(std::unique(br.begin(), br.end()), br.end());
        br.erase(std::remove_if(br.begin(), br.end(),
                                [&](double b) { return b < sp.support.lo || b > sp.support.hi; }),
                 br.end());
        auto integrand = [&](double t) {
            const double ph = -2.0 * std::numbers::pi * xi * t;
            return std::complex<double>(std::cos(ph), std::sin(ph)) * sp.f(t);
        };
        return integrate_breaks(integrand, br, 1e-14, 1e-13, 200000).value;
    }

private:
    struct Impl {
        explicit Impl(Spec s) : spec(std::move(s)) {}
        Spec spec;
        std::once_flag sup_once;
        double sup_value = 0.0;
    };
    std::shared_ptr<Impl> impl_;
};

namespace detail {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline std::complex<double> expi(double phase) { return {std::cos(phase), std::sin(phase)}; }

/// Smallest T >= start with bound(t) < cutoff for all t >= T, for a bound
/// that is decreasing beyond start.
inline double tail_cutoff(const std::function<double(double)>& bound, double start) {
    double t = start;
    while (bound(t) >= effective_cutoff) t += 0.5;
    double lo = t - 0.5, hi = t;
    if (lo < start) lo = start;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (bound(mid) >= effective_cutoff ? lo : hi) = mid;
    }
    return hi;
}

/// L1 and L2 norms and total variation (zero extension) by quadrature and
/// fine differencing on each smooth piece.
struct NumericNorms {
    double l1, l2, tv;
};

inline NumericNorms numeric_norms(const std::function<double(double)>& f, const std::vector<double>& breaks) {
    NumericNorms n{0.0, 0.0, 0.0};
    n.l1 = integrate_breaks([&](double t) { return std::abs(f(t)); }, breaks, 1e-16, 1e-14, 100000).value;
    n.l2 = std::sqrt(integrate_breaks([&](double t) { return f(t) * f(t); }, breaks, 1e-16, 1e-14, 100000).value);
    double prev_right = 0.0;  // value just left of the current piece
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double a = breaks[i], b = breaks[i + 1];
        const double eps = 1e-12 * std::max(1.0, std::abs(b));
        const int m = 40000;
        double prev = f(a + eps);
        n.tv += std::abs(prev - prev_right);
        for (int k = 1; k <= m; ++k) {
            const double t = (k == m) ? b - eps : a + (b - a) * k / m;
            const double v = f(t);
            n.tv += std::abs(v - prev);
            prev = v;
        }
        prev_right = prev;
    }
    n.tv += std::abs(prev_right);
    return n;
}

/// sup over ξ in [0, xi_max] of 4π²ξ²|η̂(ξ)| on a uniform scan, refined by
/// golden-section around the best scan point.
inline double scan_sup_fourier2(const std::function<double(double)>& g, double xi_max, double step) {
    double best = 0.0, best_xi = 0.0;
    for (double xi = step; xi <= xi_max; xi += step) {
        const double v = g(xi);
        if (v > best) {
            best = v;
            best_xi = xi;
        }
    }
    double lo = std::max(0.0, best_xi - step), hi = best_xi + step;
    for (int i = 0; i < 60; ++i) {
        const double m1 = lo + (hi - lo) * 0.381966, m2 = hi - (hi - lo) * 0.381966;
        if (g(m1) < g(m2))
            lo = m1;
        else
            hi = m2;
    }
    return std::max(best, g(0.5 * (lo + hi)));
}

inline double eta2_closed(double t) {
    if (t < 0.25 || t > 1.0) return 0.0;
    return t <= 0.5 ? 4.0 * std::log(4.0 * t) : -4.0 * std::log(t);
}

inline double eta_circ_closed(double t) {
    if (t < 0.0 || t > 2.0) return 0.0;
    const double u = t * (2.0 - t);
    return u * u * u * std::exp(-0.5 * (t - 1.0) * (t - 1.0));
}

inline double h_closed(double t) {
    if (t < 0.0 || t > 2.0) return 0.0;
    const double w = 2.0 - t;
    return t * t * w * w * w * std::exp(t - 0.5);
}

// Fourier transform of η on [0,∞) by composite Gauss–Legendre, for the
// sup scans (many evaluations, smooth integrands).
inline std::complex<double> fourier_gl(const std::function<double(double)>& f, const std::vector<double>& breaks,
                                       double xi) {
    std::complex<double> total{0.0, 0.0};
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double a = breaks[i], b = breaks[i + 1];
        const int pieces = 1 + static_cast<int>((b - a) * (std::abs(xi) + 1.0) / 1.5);
        total += gauss_legendre_integrate(
            [&](double t) { return expi(-two_pi * xi * t) * f(t); }, a, b, 24, pieces);
    }
    return total;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Factories

inline Smoothing make_gaussian() {
    Smoothing::Spec s;
    s.kind = SmoothingKind::gaussian;
    s.name = "gaussian";
    s.f = [](double t) { return std::exp(-0.5 * t * t); };
    const double T = std::sqrt(2.0 * std::log(1.0 / effective_cutoff));
    s.support = {0.0, T, false};
    s.breaks = {0.0, T};
    s.l1 = std::sqrt(std::numbers::pi / 2.0);
    s.l2 = std::sqrt(std::sqrt(std::numbers::pi) / 2.0);
    s.l1_deriv = 2.0;  // jump at 0 plus the descent from 1 to 0
    // Full-line closed form √(2π) e^{−2π²ξ²}.
    s.fourier_closed = [](double xi) {
        return std::complex<double>(std::sqrt(detail::two_pi) * std::exp(-2.0 * std::numbers::pi * std::numbers::pi * xi * xi),
                                    0.0);
    };
    return Smoothing(std::move(s));
}

inline Smoothing make_t2_gaussian() {
    Smoothing::Spec s;
    s.kind = SmoothingKind::t2_gaussian;
    s.name = "t2_gaussian";
    s.f = [](double t) { return t * t * std::exp(-0.5 * t * t); };
    const double T = detail::tail_cutoff([](double t) { return t * t * std::exp(-0.5 * t * t); }, 2.0);
    s.support = {0.0, T, false};
    s.breaks = {0.0, T};
    s.l1 = std::sqrt(std::numbers::pi / 2.0);
    s.l2 = std::sqrt(3.0 * std::sqrt(std::numbers::pi) / 8.0);
    s.l1_deriv = 4.0 / std::numbers::e;
    s.fourier_closed = [](double xi) {
        const double p2 = std::numbers::pi * std::numbers::pi;
        return std::complex<double>(std::sqrt(detail::two_pi) * (1.0 - 4.0 * p2 * xi * xi) * std::exp(-2.0 * p2 * xi * xi),
                                    0.0);
    };
    s.sup_fourier2_defined = true;
    const auto f = s.f;
    const std::vector<double> br = s.breaks;
    s.sup_fourier2_compute = [f, br]() {
        auto g = [&](double xi) {
            return 4.0 * std::numbers::pi * std::numbers::pi * xi * xi * std::abs(detail::fourier_gl(f, br, xi));
        };
        return detail::scan_sup_fourier2(g, 40.0, 0.01);
    };
    return Smoothing(std::move(s));
}

inline Smoothing make_eta1() {
    Smoothing::Spec s;
    s.kind = SmoothingKind::eta1;
    s.name = "eta1";
    s.f = [](double t) { return (t >= 0.5 && t <= 1.0) ? 2.0 : 0.0; };
    s.support = {0.5, 1.0, true};
    s.breaks = {0.5, 1.0};
    s.l1 = 1.0;
    s.l2 = std::sqrt(2.0);
    s.l1_deriv = 4.0;
    s.fourier_closed = [](double xi) -> std::complex<double> {
        if (std::abs(xi) < 1e-12) return {1.0, 0.0};
        return 2.0 * (detail::expi(-detail::two_pi * xi) - detail::expi(-std::numbers::pi * xi)) /
               std::complex<double>(0.0, -detail::two_pi * xi);
    };
    return Smoothing(std::move(s));
}

inline Smoothing make_sharp() {
    Smoothing::Spec s;
    s.kind = SmoothingKind::sharp;
    s.name = "sharp";
    s.f = [](double t) { return (t >= 0.0 && t <= 1.0) ? 1.0 : 0.0; };
    s.support = {0.0, 1.0, true};
    s.breaks = {0.0, 1.0};
    s.l1 = 1.0;
    s.l2 = 1.0;
    s.l1_deriv = 2.0;
    s.fourier_closed = [](double xi) -> std::complex<double> {
        if (std::abs(xi) < 1e-12) return {1.0, 0.0};
        return (1.0 - detail::expi(-detail::two_pi * xi)) / std::complex<double>(0.0, detail::two_pi * xi);
    };
    return Smoothing(std::move(s));
}

inline Smoothing make_eta2() {
    Smoothing::Spec s;
    s.kind = SmoothingKind::eta2;
    s.name = "eta2";
    s.f = detail::eta2_closed;
    s.support = {0.25, 1.0, true};
    s.breaks = {0.25, 0.5, 1.0};
    s.l1 = 1.0;
    s.l2 = std::sqrt(24.0 - 32.0 * std::numbers::ln2);
    s.l1_deriv = 8.0 * std::numbers::ln2;
    s.sup_fourier2_defined = true;
    s.sup_fourier2_compute = []() {
        const std::vector<double> br{0.25, 0.5, 1.0};
        auto g = [&](double xi) {
            return 4.0 * std::numbers::pi * std::numbers::pi * xi * xi *
                   std::abs(detail::fourier_gl(detail::eta2_closed, br, xi));
        };
        const double scanned = detail::scan_sup_fourier2(g, 60.0, 0.01);
        // As ξ → ∞ only the jumps of η₂' survive: 16e(−ξ/4) − 16e(−ξ/2) + 4e(−ξ).
        double limsup = 0.0;
        for (int k = 0; k < 200000; ++k) {
            const double th = detail::two_pi * k / 200000.0;
            const auto u = detail::expi(th);
            limsup = std::max(limsup, std::abs(16.0 * u - 16.0 * u * u + 4.0 * u * u * u * u));
        }
        return std::max(scanned, limsup);
    };
    return Smoothing(std::move(s));
}

inline Smoothing make_eta_circ() {
    Smoothing::Spec s;
    s.kind = SmoothingKind::eta_circ;
    s.name = "eta_circ";
    s.f = detail::eta_circ_closed;
    s.support = {0.0, 2.0, true};
    s.breaks = {0.0, 1.0, 2.0};
    const auto n = detail::numeric_norms(s.f, s.breaks);
    s.l1 = n.l1;
    s.l2 = n.l2;
    s.l1_deriv = n.tv;
    s.sup_fourier2_defined = true;
    s.sup_fourier2_compute = []() {
        const std::vector<double> br{0.0, 1.0, 2.0};
        auto g = [&](double xi) {
            return 4.0 * std::numbers::pi * std::numbers::pi * xi * xi *
                   std::abs(detail::fourier_gl(detail::eta_circ_closed, br, xi));
        };
        return detail::scan_sup_fourier2(g, 40.0, 0.005);
    };
    return Smoothing(std::move(s));
}

inline Smoothing make_h() {
    Smoothing::Spec s;
    s.kind = SmoothingKind::h;
    s.name = "h";
    s.f = detail::h_closed;
    s.support = {0.0, 2.0, true};
    s.breaks = {0.0, 1.0, 2.0};
    const auto n = detail::numeric_norms(s.f, s.breaks);
    s.l1 = n.l1;
    s.l2 = n.l2;
    s.l1_deriv = n.tv;
    return Smoothing(std::move(s));
}

/// Custom weight on [lo, hi]; norms computed numerically when compact.
inline Smoothing make_custom(std::string name, std::function<double(double)> f, double lo, double hi,
                             bool compact = true, std::vector<double> breaks = {}) {
    if (!(hi > lo) || lo < 0.0) throw DomainError("make_custom: need 0 <= lo < hi");
    Smoothing::Spec s;
    s.kind = SmoothingKind::custom;
    s.name = std::move(name);
    s.f = std::move(f);
    s.support = {lo, hi, compact};
    breaks.push_back(lo);
    breaks.push_back(hi);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    s.breaks = breaks;
    const auto n = detail::numeric_norms(s.f, s.breaks);
    s.l1 = n.l1;
    s.l2 = n.l2;
    s.l1_deriv = n.tv;
    s.fourier_defined = compact;
    return Smoothing(std::move(s));
}

// ---------------------------------------------------------------------------
// Mellin convolution

/// (η_a ∗_M η_b)(t) = ∫₀^∞ η_a(r) η_b(t/r) dr/r.
inline double mellin_convolve(const Smoothing& a, const Smoothing& b, double t) {
    if (!(t > 0.0)) return 0.0;
    const auto& sa = a.support();
    const auto& sb = b.support();
    double lo = sa.lo;
    double hi = sa.hi;
    lo = std::max(lo, t / sb.hi);
    if (sb.lo > 0.0) hi = std::min(hi, t / sb.lo);
    if (!(hi > lo)) return 0.0;
    std::vector<double> br{lo, hi};
    for (double x : a.breakpoints())
        if (x > lo && x < hi) br.push_back(x);
    for (double x : b.breakpoints())
        if (x > 0.0 && t / x > lo && t / x < hi) br.push_back(t / x);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    return integrate_breaks([&](double r) { return a(r) * b(t / r) / r; }, br, 1e-16, 1e-14, 20000).value;
}

// ---------------------------------------------------------------------------
// η_*(t) = (t² e^{−t²/2} ∗_M η₂)(κ t)

namespace detail {

// (t²e^{−t²/2} ∗_M η₂)(s): η₂(s/r) = 4 log(r/s) for r ∈ [s, 2s] and
// 4 log(4s/r) for r ∈ [2s, 4s].
inline double eta_star_unscaled(double s) {
    if (!(s > 0.0)) return 0.0;
    const auto& rule = gauss_legendre(64);
    auto ea = [](double r) { return r * r * std::exp(-0.5 * r * r); };
    double total = 0.0;
    {
        const double a = s, b = 2.0 * s, c = 0.5 * (a + b), h = 0.5 * (b - a);
        double part = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double r = c + h * rule.nodes[i];
            part += rule.weights[i] * ea(r) * 4.0 * std::log(r / s) / r;
        }
        total += part * h;
    }
    {
        const double a = 2.0 * s, b = 4.0 * s, c = 0.5 * (a + b), h = 0.5 * (b - a);
        double part = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double r = c + h * rule.nodes[i];
            part += rule.weights[i] * ea(r) * 4.0 * std::log(4.0 * s / r) / r;
        }
        total += part * h;
    }
    return total;
}

}  // namespace detail

inline Smoothing make_eta_star(double kappa = 49.0) {
    if (!(kappa > 0.0)) throw DomainError("eta_star: kappa must be positive");
    Smoothing::Spec s;
    s.kind = SmoothingKind::eta_star;
    s.name = "eta_star";
    s.param = kappa;
    s.f = [kappa](double t) { return detail::eta_star_unscaled(kappa * t); };
    // η_*(s/κ) <= max_{r>=s} r²e^{−r²/2} · ∫η₂(u)du/u, and ∫η₂(u)du/u = 4 log²2.
    const double mass_log = 4.0 * std::numbers::ln2 * std::numbers::ln2;
    const double smax =
        detail::tail_cutoff([mass_log](double r) { return mass_log * r * r * std::exp(-0.5 * r * r); }, 2.0);
    s.support = {0.0, smax / kappa, false};
    s.breaks = {0.0, 1.0 / kappa, 2.0 / kappa, 4.0 / kappa, smax / kappa};
    const auto n = detail::numeric_norms(s.f, s.breaks);
    s.l1 = n.l1;
    s.l2 = n.l2;
    s.l1_deriv = n.tv;
    s.sup_fourier2_defined = true;
    s.sup_fourier2_compute = [kappa, smax]() {
        const std::vector<double> br{0.0, 1.0, 2.0, 4.0, smax};
        // Scaling: η̂_*(ξ) = κ⁻¹ F̂(ξ/κ), so the sup scales by κ.
        auto g = [&](double zeta) {
            return 4.0 * std::numbers::pi * std::numbers::pi * zeta * zeta *
                   std::abs(detail::fourier_gl(detail::eta_star_unscaled, br, zeta));
        };
        return kappa * detail::scan_sup_fourier2(g, 20.0, 0.01);
    };
    return Smoothing(std::move(s));
}

/// η_*(t) for the given κ.
inline double eta_star(double kappa, double t) {
    if (!(kappa > 0.0)) throw DomainError("eta_star: kappa must be positive");
    if (!(t > 0.0)) return 0.0;
    return detail::eta_star_unscaled(kappa * t);
}

// ---------------------------------------------------------------------------
// h_R and η₊

namespace detail {

// g(u) = h(e^u).
inline double h_log(double u) { return u > std::numbers::ln2 ? 0.0 : h_closed(std::exp(u)); }

// Dirichlet kernel F_R in the variable v = log y, with the removable
// singularity at v = 0 replaced by its Taylor expansion.
inline double dirichlet_kernel(double R, double v) {
    if (std::abs(v) < 1e-4) {
        const double rv2 = (R * v) * (R * v);
        return R / std::numbers::pi * (1.0 - rv2 / 6.0 + rv2 * rv2 / 120.0);
    }
    return std::sin(R * v) / (std::numbers::pi * v);
}

}  // namespace detail

/// h_R(t) = ∫₀^∞ h(t/y) F_R(y) dy/y evaluated directly by quadrature of the
/// Dirichlet-kernel integral (independent of the spectral table).
inline double h_R_direct(double R, double t) {
    if (!(t > 0.0) || !(R > 0.0)) throw DomainError("h_R_direct: need t > 0 and R > 0");
    const double u = std::log(t);
    // h(e^{u−v}) vanishes for v < u − log 2 and is below 1e-30 for u − v < −36.
    const double a = u - std::numbers::ln2;
    const double b = u + 36.0;
    const double panel = std::numbers::pi / R;
    const int pieces = static_cast<int>(std::ceil((b - a) / panel));
    std::vector<double> br;
    br.reserve(static_cast<std::size_t>(pieces) + 2);
    for (int i = 0; i <= pieces; ++i) br.push_back(std::min(b, a + i * panel));
    if (0.0 > a && 0.0 < b) br.push_back(0.0);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    detail::KahanSum acc;
    const auto& rule = gauss_legendre(16);
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
        const double lo = br[i], hi = br[i + 1];
        const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        double part = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double v = c + h * rule.nodes[k];
            part += rule.weights[k] * detail::h_log(u - v) * detail::dirichlet_kernel(R, v);
        }
        acc.add(part * h);
    }
    return acc.value();
}

/// Spectral construction of h_R: low-pass the transform of g(u) = h(e^u) to
/// |ω| <= R on a periodic grid of step 2^-12 and period 128.
inline std::shared_ptr<const EtaPlusData> build_h_R(double R) {
    if (!(R > 0.0)) throw DomainError("build_eta_plus: R must be positive");
    constexpr double period = 128.0;
    constexpr std::size_t N = std::size_t{1} << 19;
    constexpr double U0 = -96.0;
    const double du = period / static_cast<double>(N);
    if (R >= std::numbers::pi / du) throw DomainError("build_eta_plus: R above grid Nyquist frequency");
    require_memory(N * sizeof(std::complex<double>) * 2, "build_eta_plus");

    std::vector<std::complex<double>> grid(N);
    for (std::size_t j = 0; j < N; ++j) grid[j] = detail::h_log(U0 + du * static_cast<double>(j));
    dft_inplace(grid, -1);
    detail::KahanSum cut_energy;
    for (std::size_t k = 0; k < N; ++k) {
        const double kk = k < N / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(N);
        const double omega = detail::two_pi * kk / period;
        const double w = std::abs(omega) < R ? 1.0 : (std::abs(omega) == R ? 0.5 : 0.0);
        cut_energy.add(std::norm(grid[k]) * (1.0 - w) * (1.0 - w));
        grid[k] *= w;
    }
    dft_inplace(grid, +1);

    auto data = std::make_shared<EtaPlusData>();
    data->R = R;
    data->du = du;
    const double keep_lo = -60.0, keep_hi = 3.0;
    const auto j0 = static_cast<std::size_t>((keep_lo - U0) / du);
    const auto j1 = static_cast<std::size_t>((keep_hi - U0) / du);
    data->u0 = U0 + du * static_cast<double>(j0);
    data->table.resize(j1 - j0 + 1);
    for (std::size_t j = j0; j <= j1; ++j) {
        const double v = grid[j].real() / static_cast<double>(N);
        data->table[j - j0] = v;
        data->sup_h = std::max(data->sup_h, std::abs(v));
    }
    // Discrete Parseval: du·Σ|h_R − h|² = (du/N)·Σ_{cut}|G_k|².
    data->l2_log_error = std::sqrt(cut_energy.value() * du / static_cast<double>(N));
    return data;
}

inline Smoothing make_h_R(std::shared_ptr<const EtaPlusData> data) {
    Smoothing::Spec s;
    s.kind = SmoothingKind::h_R;
    s.name = "h_R";
    s.param = data->R;
    s.plus = data;
    s.f = [d = data.get(), keep = data](double t) { return d->h_R(t); };
    s.support = {0.0, std::exp(data->u0 + data->du * static_cast<double>(data->table.size() - 1)), false};
    s.breaks = {0.0, s.support.hi};
    s.fourier_defined = false;  // h_R decays only like 1/|log t|
    return Smoothing(std::move(s));
}

/// η₊(t) = h_R(t) t e^{−t²/2}.
inline Smoothing build_eta_plus(double R = 200.0) {
    auto base = build_h_R(R);
    auto data = std::make_shared<EtaPlusData>(*base);
    auto eval = [d = data.get()](double t) { return d->h_R(t) * t * std::exp(-0.5 * t * t); };

    const double sup_h = data->sup_h;
    const double T_safe =
        detail::tail_cutoff([sup_h](double t) { return (sup_h + 1.0) * t * std::exp(-0.5 * t * t); }, 2.0);
    // Tighten to the last grid point where |η₊| reaches the cutoff.
    double T = 2.0;
    for (double t = T_safe; t > 2.0; t -= 1e-3)
        if (std::abs(eval(t)) >= effective_cutoff) {
            T = t + 1e-3;
            break;
        }
    std::vector<double> breaks{0.0, 1.0, 2.0, T};
    // |η₊ − η∘|₂ on [0, T]; η∘ vanishes beyond 2.
    data->l2_eta_error = std::sqrt(
        integrate_breaks(
            [&](double t) {
                const double d = eval(t) - detail::eta_circ_closed(t);
                return d * d;
            },
            breaks, 1e-20, 1e-10, 100000)
            .value);

    Smoothing::Spec s;
    s.kind = SmoothingKind::eta_plus;
    s.name = "eta_plus";
    s.param = R;
    s.f = [d = data.get(), keep = std::shared_ptr<const EtaPlusData>(data)](double t) {
        return d->h_R(t) * t * std::exp(-0.5 * t * t);
    };
    s.support = {0.0, T, false};
    s.breaks = breaks;
    const auto n = detail::numeric_norms(s.f, s.breaks);
    s.l1 = n.l1;
    s.l2 = n.l2;
    s.l1_deriv = n.tv;
    s.plus = data;
    return Smoothing(std::move(s));
}

/// Weight by name: gaussian, t2_gaussian, eta1, eta2, eta_circ, h, eta_plus,
/// eta_star, sharp.
inline Smoothing smoothing_from_name(const std::string& name, double kappa = 49.0, double R = 200.0) {
    if (name == "gaussian") return make_gaussian();
    if (name == "t2_gaussian") return make_t2_gaussian();
    if (name == "eta1") return make_eta1();
    if (name == "eta2") return make_eta2();
    if (name == "eta_circ") return make_eta_circ();
    if (name == "h") return make_h();
    if (name == "eta_plus") return build_eta_plus(R);
    if (name == "h_R") return make_h_R(build_h_R(R));
    if (name == "eta_star") return make_eta_star(kappa);
    if (name == "sharp") return make_sharp();
    throw DomainError("unknown smoothing: " + name);
}

// ---------------------------------------------------------------------------
// Mellin transform F_δ(s) = ∫₀^∞ e(δt) e^{−t²/2} t^{s−1} dt

struct MellinPoint {
    std::complex<double> s;
    std::complex<double> value;
};

struct MellinEvaluation {
    std::complex<double> value;
    double error = 0.0;  // estimated absolute error
    double theta = 0.0;  // contour angle used
};

namespace detail {

// τ >= 0 case. The ray t = r e^{iθ} is chosen to minimize the peak of the
// integrand's modulus, so the result is not the difference of large terms.
inline MellinEvaluation mellin_fdelta_upper(double delta, std::complex<double> s) {
    const double sigma = s.real(), tau = s.imag();
    const std::complex<double> a(0.0, two_pi * delta);

    // Peak log-modulus along the ray at angle θ.
    auto peak = [&](double th) {
        const double c = std::cos(2.0 * th);
        const double b = two_pi * delta * std::sin(th);
        return -th * tau + (b < 0.0 ? b * b / (2.0 * c) : 0.0);
    };
    const double th_max = std::numbers::pi / 4.0 - 0.01;
    double best = peak(0.0);
    for (int i = 1; i <= 4000; ++i) best = std::min(best, peak(th_max * i / 4000.0));
    double theta = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        const double th = th_max * i / 4000.0;
        if (peak(th) <= best + 0.5) {
            theta = th;
            break;
        }
    }
    const std::complex<double> rot = expi(theta);
    const std::complex<double> i_theta_s = std::complex<double>(0.0, theta) * s;

    // Near zero: ∫₀^{r0} φ(re^{iθ}) r^{s−1} dr = Σ c_k e^{ikθ} r0^{s+k}/(s+k),
    // with φ(z) = exp(az − z²/2) and (k+1)c_{k+1} = a c_k − c_{k−1}.
    const double r0 = std::min(0.5, 1.0 / (std::abs(a) + 1.0));
    std::complex<double> near{0.0, 0.0};
    double near_abs = 0.0;
    {
        std::complex<double> c_prev{0.0, 0.0}, c_cur{1.0, 0.0};
        std::complex<double> zpow{1.0, 0.0};  // (r0 e^{iθ})^k
        const std::complex<double> z0 = r0 * rot;
        const std::complex<double> lead = std::exp(s * std::log(r0) + i_theta_s);
        for (int k = 0; k < 400; ++k) {
            const std::complex<double> denom = s + static_cast<double>(k);
            if (std::abs(denom) < 1e-300) {
                if (std::abs(c_cur) != 0.0) throw DomainError("mellin_fdelta: pole of F_delta");
            } else {
                const std::complex<double> term = c_cur * zpow * lead / denom;
                near += term;
                near_abs += std::abs(term);
            }
            const double scale = (std::abs(c_cur) + std::abs(c_prev)) * std::abs(zpow) * std::abs(lead);
            if (k > 8 && scale < 1e-22 * (near_abs + 1e-300)) break;
            const std::complex<double> c_next = (a * c_cur - c_prev) / static_cast<double>(k + 1);
            c_prev = c_cur;
            c_cur = c_next;
            zpow *= z0;
        }
    }

    // Far part: ∫_{r0}^{∞} along the ray, folded into a single exponent.
    auto exponent = [&](double r) {
        const std::complex<double> z = r * rot;
        return a * z - 0.5 * z * z + (s - 1.0) * std::log(r) + i_theta_s;
    };
    double max_log = -1e300;
    double r_end = r0;
    {
        double r = r0;
        bool past_peak = false;
        while (true) {
            const double v = exponent(r).real();
            if (v > max_log) max_log = v;
            const double c = std::cos(2.0 * theta);
            const double slope = -r * c - two_pi * delta * std::sin(theta) + (sigma - 1.0) / r;
            if (slope < 0.0) past_peak = true;
            if (past_peak && v < max_log - 48.0 && r > 1.0) break;
            r += 0.02 * (1.0 + r);
            if (r > 1e4) break;
        }
        r_end = r;
    }
    std::vector<double> br{r0};
    {
        double r = r0;
        while (r < r_end) {
            // |d/dr| of the exponent bounds both oscillation and growth rates.
            const double rate = std::abs(a * rot - r * rot * rot + (s - 1.0) / r);
            double step = std::numbers::pi / (rate + 1.0);
            step = std::min(step, 0.25 * (1.0 + r));
            r = std::min(r_end, r + step);
            br.push_back(r);
        }
    }
    const auto& rule = gauss_legendre(20);
    std::complex<double> far{0.0, 0.0};
    double far_abs = 0.0, far_err = 0.0;
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
        const double lo = br[i], hi = br[i + 1];
        auto f = [&](double r) { return std::exp(exponent(r)); };
        auto [v, e] = gk15<std::complex<double>>(f, lo, hi);
        // Cross-check each panel with a 20-point Gauss rule; keep the larger
        // discrepancy as the panel error.
        const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        std::complex<double> g{0.0, 0.0};
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) g += rule.weights[k] * f(c + h * rule.nodes[k]);
        g *= h;
        far += g;
        far_abs += std::abs(g);
        far_err += std::min(e, std::abs(g - v) + 1e-300);
    }
    MellinEvaluation out;
    out.value = near + far;
    out.theta = theta;
    out.error = far_err + 4e-16 * (near_abs + far_abs) * std::sqrt(static_cast<double>(br.size()));
    return out;
}

// G = ∫ exp(az − z²/2)z^{s−1} dz along the line Im z = y0 from −∞ to +∞,
// y0 the imaginary part of the upper saddle. Rotating the half line [0, ∞)
// onto arg z = π gives F_δ(s) = e^{iπs}F_{−δ}(s) + G; for δ > 0 and large τ
// both terms are small while the ray contour is left with heavy cancellation.
inline MellinEvaluation mellin_fdelta_line(double delta, std::complex<double> s) {
    MellinEvaluation out;
    out.error = HUGE_VAL;
    const std::complex<double> a(0.0, two_pi * delta);
    const std::complex<double> disc = std::sqrt(a * a + 4.0 * (s - 1.0));
    const std::complex<double> z1 = 0.5 * (a + disc), z2 = 0.5 * (a - disc);
    const std::complex<double> zs = z1.imag() >= z2.imag() ? z1 : z2;
    const double y0 = zs.imag();
    if (!(y0 > 0.05)) return out;

    auto phi = [&](std::complex<double> z) { return a * z - 0.5 * z * z + (s - 1.0) * std::log(z); };
    auto dphi = [&](std::complex<double> z) { return a - z + (s - 1.0) / z; };
    const auto& rule = gauss_legendre(20);
    std::complex<double> sum{0.0, 0.0};
    double abs_sum = 0.0, err = 0.0;
    std::size_t panels = 0;
    // Walks from x0 in direction dir (±1) until 48 e-folds below the peak.
    auto walk = [&](double dir) {
        double x = zs.real(), peak = phi({x, y0}).real();
        while (std::abs(x - zs.real()) < 1e4) {
            const std::complex<double> z(x, y0);
            double step = std::numbers::pi / (std::abs(dphi(z)) + 1.0);
            step = std::min(step, 0.25 * (1.0 + std::abs(z)));
            const double nx = x + dir * step;
            const double lo = std::min(x, nx), hi = std::max(x, nx);
            auto f = [&](double u) { return std::exp(phi({u, y0})); };
            auto [v, e] = gk15<std::complex<double>>(f, lo, hi);
            const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
            std::complex<double> g{0.0, 0.0};
            for (std::size_t k = 0; k < rule.nodes.size(); ++k) g += rule.weights[k] * f(c + h * rule.nodes[k]);
            g *= h;
            sum += g;
            abs_sum += std::abs(g);
            err += std::min(e, std::abs(g - v) + 1e-300);
            ++panels;
            x = nx;
            const double level = phi({x, y0}).real();
            peak = std::max(peak, level);
            if (dir * x > std::abs(y0) + 1.0 && dir * (dphi({x, y0}).real()) < 0.0 && level < peak - 48.0) break;
        }
    };
    walk(+1.0);
    walk(-1.0);
    out.value = sum;
    out.error = err + 4e-16 * abs_sum * std::sqrt(static_cast<double>(panels));
    return out;
}

}  // namespace detail

/// F_δ(s) with its estimated absolute error, no precision enforcement.
inline MellinEvaluation mellin_fdelta_detail(double delta, std::complex<double> s) {
    if (s.real() < -1.0 || s.real() > 2.0) throw DomainError("mellin_fdelta: Re(s) must lie in [-1, 2]");
    if (!std::isfinite(delta) || !std::isfinite(s.imag())) throw DomainError("mellin_fdelta: non-finite input");
    const bool upper = s.imag() >= 0.0;
    // F_δ(σ − iτ) = conj(F_{−δ}(σ + iτ)).
    const double d = upper ? delta : -delta;
    const std::complex<double> z = upper ? s : std::conj(s);
    auto r = detail::mellin_fdelta_upper(d, z);
    if (r.error > 1e-10 * std::abs(r.value)) {
        const auto g = detail::mellin_fdelta_line(d, z);
        if (std::isfinite(g.error)) {
            const auto mirror = detail::mellin_fdelta_upper(-d, z);
            const std::complex<double> rot = std::exp(std::complex<double>(0.0, std::numbers::pi) * z);
            MellinEvaluation alt;
            alt.value = rot * mirror.value + g.value;
            alt.error = std::abs(rot) * mirror.error + g.error;
            alt.theta = std::numbers::pi;
            if (alt.error / std::abs(alt.value) < r.error / std::abs(r.value)) r = alt;
        }
    }
    if (!upper) r.value = std::conj(r.value);
    return r;
}

/// F_δ(s) for η(t) = e^{−t²/2}; throws PrecisionError when the relative
/// target 1e-8 is missed on a value above 1e-30.
inline std::complex<double> mellin_fdelta(double delta, std::complex<double> s) {
    const auto r = mellin_fdelta_detail(delta, s);
    const double mag = std::abs(r.value);
    if (mag > 1e-30 && r.error > 1e-8 * mag) throw PrecisionError("mellin_fdelta: relative target missed", r.error / mag);
    return r.value;
}

/// 4.226·e^{−0.1065(τ/πδ)²} for |τ| < (3/2)(πδ)², else 4.226·e^{−0.1598|τ|}.
inline double fdelta_bound_rhs(double tau, double delta) {
    const double pd = std::numbers::pi * delta;
    if (std::abs(tau) < 1.5 * pd * pd) {
        const double r = tau / pd;
        return 4.226 * std::exp(-0.1065 * r * r);
    }
    return 4.226 * std::exp(-0.1598 * std::abs(tau));
}

inline bool fdelta_bound_first_branch(double tau, double delta) {
    const double pd = std::numbers::pi * delta;
    return std::abs(tau) < 1.5 * pd * pd;
}

/// |F_δ(s)| + |F_δ(1−s)| against the two-branch bound, s = σ + iτ.
inline BoundReport check_fdelta_bound(double sigma, double tau, double delta) {
    if (sigma < 0.0 || sigma > 1.0) throw DomainError("check_fdelta_bound: sigma must lie in [0,1]");
    if (std::abs(tau) < std::max(100.0, 4.0 * std::numbers::pi * std::numbers::pi * std::abs(delta)))
        throw DomainError("check_fdelta_bound: need |tau| >= max(100, 4 pi^2 |delta|)");
    const std::complex<double> s(sigma, tau);
    const auto f1 = mellin_fdelta_detail(delta, s);
    const auto f2 = mellin_fdelta_detail(delta, 1.0 - s);
    BoundReport rep;
    rep.name = "mellin_fdelta_bound";
    rep.bound = fdelta_bound_rhs(tau, delta);
    rep.measured = std::abs(f1.value) + std::abs(f2.value) + f1.error + f2.error;
    rep.add_term("|F(s)|", std::abs(f1.value));
    rep.add_term("|F(1-s)|", std::abs(f2.value));
    rep.add_term("error_bound", f1.error + f2.error);
    rep.flag(fdelta_bound_first_branch(tau, delta) ? "branch:gaussian" : "branch:exponential");
    rep.finalize();
    return rep;
}

/// Samples (t, η(t)) at `points` equally spaced t over the declared support.
inline void write_smoothing_csv(std::ostream& os, const Smoothing& eta, std::size_t points = 1001) {
    if (points < 2) throw DomainError("write_smoothing_csv: need at least 2 points");
    const double lo = eta.support().lo, hi = eta.support().hi;
    os << "t,eta\n";
    for (std::size_t k = 0; k < points; ++k) {
        const double t = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
        os << fmt(t) << ',' << fmt(eta(t)) << '\n';
    }
}

}  // namespace goldbach_lab
