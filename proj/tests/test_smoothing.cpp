#include <gtest/gtest.h>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <sstream>

#include <goldbach_lab/smoothing.hpp>

using namespace goldbach_lab;

namespace {

constexpr double pi = std::numbers::pi;

/// ∫_a^b f by 20-point Gauss–Legendre on `panels` equal panels.
template <class F>
double panel_gauss(F f, double a, double b, int panels) {
    double s = 0.0;
    const double h = (b - a) / panels;
    for (int k = 0; k < panels; ++k)
        s += boost::math::quadrature::gauss<double, 20>::integrate(f, a + k * h, a + (k + 1) * h);
    return s;
}

/// ∫ over [lo, hi] split at the smoothing's non-smooth points.
double integrate_pieces(const std::function<double(double)>& f, std::vector<double> cuts, int panels = 400) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) s += panel_gauss(f, cuts[i], cuts[i + 1], panels);
    return s;
}

/// F_δ(s) on the real axis after t = e^w, in 50 digits so cancellation down
/// to 1e-30 is harmless.
std::complex<double> fdelta_oracle(double delta, std::complex<double> s) {
    using mp = boost::multiprecision::cpp_bin_float_50;
    const mp two_pi = 2 * boost::math::constants::pi<mp>();
    const double sigma = s.real(), tau = s.imag();
    const double w_lo = -120.0 / sigma, w_hi = 4.0;
    mp re = 0, im = 0;
    double a = w_lo;
    while (a < w_hi) {
        const double freq = std::abs(tau) + 2 * pi * std::abs(delta) * std::exp(a) + std::exp(2 * a) + 1.0;
        const double b = std::min(w_hi, a + std::min(0.5, 2.0 / freq));
        auto fr = [&](const mp& w) {
            const mp t = exp(w);
            return exp(sigma * w - t * t / 2) * cos(two_pi * delta * t + tau * w);
        };
        auto fi = [&](const mp& w) {
            const mp t = exp(w);
            return exp(sigma * w - t * t / 2) * sin(two_pi * delta * t + tau * w);
        };
        re += boost::math::quadrature::gauss<mp, 20>::integrate(fr, mp(a), mp(b));
        im += boost::math::quadrature::gauss<mp, 20>::integrate(fi, mp(a), mp(b));
        a = b;
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

}  // namespace

TEST(Eval, Examples) {
    EXPECT_EQ(make_gaussian()(0.0), 1.0);
    EXPECT_NEAR(make_eta2()(0.5), 4.0 * std::log(2.0), 1e-14);
    EXPECT_NEAR(make_eta2()(0.5), 2.77259, 1e-5);
    EXPECT_EQ(make_eta_circ()(2.0), 0.0);
}

TEST(Eval, OutsideSupportIsExactlyZero) {
    for (const char* name : {"gaussian", "t2_gaussian", "eta1", "eta2", "eta_circ", "h", "eta_plus", "eta_star", "sharp"}) {
        const auto eta = smoothing_from_name(name);
        const auto sup = eta.support();
        for (double t : {sup.hi + 1e-9, sup.hi * 1.01 + 1e-6, sup.hi + 1.0, sup.hi * 10.0}) EXPECT_EQ(eta(t), 0.0) << name;
        if (sup.lo > 0.0) EXPECT_EQ(eta(sup.lo * 0.99), 0.0) << name;
        // Nothing above the cutoff just outside the declared support.
        for (double t = sup.hi + 1e-3; t < sup.hi * 1.5 + 1.0; t += 1e-3) ASSERT_LE(std::abs(eta(t)), effective_cutoff) << name;
    }
}

TEST(Eval, NonnegativeKinds) {
    for (const char* name : {"gaussian", "eta1", "eta2", "eta_circ", "h", "eta_star", "sharp"}) {
        const auto eta = smoothing_from_name(name);
        for (double t = 0.0; t <= eta.support().hi; t += eta.support().hi / 5000.0) ASSERT_GE(eta(t), 0.0) << name << " " << t;
    }
}

TEST(Eval, EtaCircSymmetric) {
    const auto e = make_eta_circ();
    for (int k = 0; k <= 2048; ++k) {
        const double t = k / 1024.0;
        ASSERT_EQ(e(t), e(2.0 - t)) << t;
    }
}

TEST(Norms, MatchIndependentQuadrature) {
    for (const char* name : {"gaussian", "t2_gaussian", "eta1", "eta2", "eta_circ", "h", "eta_plus", "eta_star", "sharp"}) {
        const auto eta = smoothing_from_name(name);
        auto cuts = eta.breakpoints();
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        const double l1 = integrate_pieces([&](double t) { return std::abs(eta(t)); }, cuts);
        const double l2 = std::sqrt(integrate_pieces([&](double t) { return eta(t) * eta(t); }, cuts));
        ASSERT_TRUE(eta.norm_l1().has_value()) << name;
        ASSERT_TRUE(eta.norm_l2().has_value()) << name;
        EXPECT_NEAR(*eta.norm_l1() / l1, 1.0, 1e-6) << name;
        EXPECT_NEAR(*eta.norm_l2() / l2, 1.0, 1e-6) << name;
        if (eta.norm_l1_deriv()) {
            // Total variation on a fine grid.
            const double lo = cuts.front(), hi = cuts.back();
            double tv = std::abs(eta(lo)), prev = eta(lo);
            const int steps = 2000000;
            for (int k = 1; k <= steps; ++k) {
                const double v = eta(lo + (hi - lo) * k / steps);
                tv += std::abs(v - prev);
                prev = v;
            }
            tv += std::abs(prev);
            EXPECT_NEAR(*eta.norm_l1_deriv() / tv, 1.0, 1e-6) << name;
        }
    }
}

TEST(Fourier, Examples) {
    const auto g = make_gaussian();
    EXPECT_NEAR(g.fourier(0.0).real(), std::sqrt(2 * pi), 1e-14);
    EXPECT_NEAR(g.fourier(0.0).real(), 2.50663, 1e-5);
    EXPECT_NEAR(g.fourier(1.0).real() / (std::sqrt(2 * pi) * std::exp(-2 * pi * pi)), 1.0, 1e-12);
    EXPECT_NEAR(g.fourier(1.0).real(), 6.70e-9, 0.01e-9);
    EXPECT_NEAR(std::abs(make_eta1().fourier(0.0) - 1.0), 0.0, 1e-9);
}

TEST(Fourier, GaussianSelfDuality) {
    const auto g = make_gaussian();
    for (double d = -3.0; d <= 3.0; d += 0.01) {
        const auto v = g.fourier(d);
        ASSERT_NEAR(v.real(), std::sqrt(2 * pi) * std::exp(-2 * pi * pi * d * d), 1e-10) << d;
        ASSERT_NEAR(v.imag(), 0.0, 1e-10);
    }
}

TEST(Fourier, QuadratureKindsMatchOracle) {
    for (const char* name : {"eta2", "eta_circ", "eta1"}) {
        const auto eta = smoothing_from_name(name);
        auto cuts = eta.breakpoints();
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (double xi : {0.0, 0.3, 1.0, 2.5, 7.0}) {
            const double re = integrate_pieces([&](double t) { return eta(t) * std::cos(2 * pi * xi * t); }, cuts);
            const double im = integrate_pieces([&](double t) { return -eta(t) * std::sin(2 * pi * xi * t); }, cuts);
            const auto v = eta.fourier(xi);
            EXPECT_NEAR(v.real(), re, 1e-9) << name << " " << xi;
            EXPECT_NEAR(v.imag(), im, 1e-9) << name << " " << xi;
        }
    }
}

TEST(Fourier, DivergentKindUnsupported) {
    const auto hR = smoothing_from_name("h_R");
    EXPECT_THROW(hR.fourier(0.5), UnsupportedError);
}

TEST(Mellin, Moments) {
    EXPECT_NEAR(std::abs(mellin_fdelta(0.0, {1.0, 0.0}) - std::sqrt(pi / 2)), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(mellin_fdelta(0.0, {1.0, 0.0})), 1.25331, 1e-5);
    EXPECT_NEAR(std::abs(mellin_fdelta(0.0, {2.0, 0.0}) - 1.0), 0.0, 1e-10);
}

TEST(Mellin, MatchesHighPrecisionQuadrature) {
    for (const auto& [d, s] : std::vector<std::pair<double, std::complex<double>>>{
             {1.0, {0.5, 10.0}}, {0.5, {0.5, 30.0}}, {1.0, {0.5, 30.0}}, {-1.0, {0.5, 30.0}}, {0.0, {0.5, 3.0}},
             {0.3, {1.5, -4.0}}, {-2.0, {0.2, 7.0}}, {0.5, {1.0, 0.0}}, {0.0, {1.75, 20.0}}, {-0.7, {0.25, 1.0}}}) {
        const auto v = mellin_fdelta(d, s);
        const auto o = fdelta_oracle(d, s);
        EXPECT_LE(std::abs(v - o), 1e-8 * std::abs(o)) << d << " " << s;
    }
}

TEST(FdeltaBound, Examples) {
    const auto r = check_fdelta_bound(0.5, 150.0, 0.0);
    EXPECT_NEAR(r.bound, 4.226 * std::exp(-0.1598 * 150.0), 1e-22);
    EXPECT_TRUE(r.holds);
    const double first = 4.226 * std::exp(-0.1065 * std::pow(120.0 / (10.0 * pi), 2));
    EXPECT_TRUE(fdelta_bound_first_branch(120.0, 10.0));
    EXPECT_DOUBLE_EQ(fdelta_bound_rhs(120.0, 10.0), first);
    EXPECT_THROW(check_fdelta_bound(0.5, 120.0, 10.0), DomainError);
    const auto r0 = check_fdelta_bound(0.0, 200.0, 0.0);
    EXPECT_TRUE(r0.holds);
    EXPECT_LT(r0.slack, 1.0);
}

TEST(FdeltaBound, SmallGrid) {
    for (double sigma : {0.0, 0.5, 1.0})
        for (double delta : {-3.0, 0.0, 1.0, 4.0})
            for (double tau : {160.0, -200.0, 400.0}) {
                const auto r = check_fdelta_bound(sigma, tau, delta);
                EXPECT_TRUE(r.holds) << sigma << " " << tau << " " << delta;
            }
}

TEST(MellinConvolve, EtaOneSquared) {
    const auto e1 = make_eta1();
    EXPECT_NEAR(mellin_convolve(e1, e1, 0.5), 4.0 * std::log(2.0), 1e-9);
    EXPECT_NEAR(mellin_convolve(e1, e1, 0.25), 0.0, 1e-12);
    EXPECT_NEAR(mellin_convolve(e1, e1, 0.3), 4.0 * std::log(1.2), 1e-9);
    const auto e2 = make_eta2();
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double t = 0.25 + 0.75 * k / 999.0;
        worst = std::max(worst, std::abs(mellin_convolve(e1, e1, t) - e2(t)));
    }
    EXPECT_LT(worst, 1e-9);
}

TEST(MellinConvolve, MassIdentity) {
    // ∫(a ∗_M b)(t) dt = |a|₁·|b|₁ for nonnegative compactly supported pairs.
    const auto e1 = make_eta1();
    const auto e2 = make_eta2();
    const auto ec = make_eta_circ();
    for (const auto& [a, b] : std::vector<std::pair<Smoothing, Smoothing>>{{e1, e1}, {e1, e2}, {ec, e2}}) {
        const double hi = a.support().hi * b.support().hi;
        const double lo = a.support().lo * b.support().lo;
        std::vector<double> cuts{lo};
        for (double x : a.breakpoints())
            for (double y : b.breakpoints())
                if (x * y > lo && x * y < hi) cuts.push_back(x * y);
        cuts.push_back(hi);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        const double mass = integrate_pieces([&](double t) { return mellin_convolve(a, b, t); }, cuts, 40);
        EXPECT_NEAR(mass / (*a.norm_l1() * *b.norm_l1()), 1.0, 1e-8);
    }
}

TEST(EtaStar, MassAndConcentration) {
    const double kappa = 49.0;
    const auto es = make_eta_star(kappa);
    const double hi = es.support().hi;
    EXPECT_LT(std::abs(eta_star(kappa, hi * 1.01)), 1e-15);
    EXPECT_EQ(es(hi * 2.0), 0.0);
    const double mass = integrate_pieces([&](double t) { return es(t); }, es.breakpoints(), 200);
    EXPECT_NEAR(mass / (std::sqrt(pi / 2) * 1.0 / kappa), 1.0, 1e-8);
    const double head = integrate_pieces([&](double t) { return es(t); }, {0.0, 1.0 / kappa, 2.0 / kappa, 4.0 / kappa, 0.2}, 200);
    EXPECT_GT(head / mass, 0.99);
    for (double t : {0.001, 0.01, 0.02, 0.05}) EXPECT_NEAR(es(t), eta_star(kappa, t), 1e-15);
}

TEST(EtaPlus, Construction) {
    const auto ep = build_eta_plus(200.0);
    EXPECT_EQ(ep(0.0), 0.0);
    ASSERT_TRUE(ep.kind() == SmoothingKind::eta_plus);
    EXPECT_LT(ep.param(), 200.0 + 1e-12);
    std::vector<double> l2;
    for (double R : {50.0, 100.0, 200.0}) l2.push_back(build_h_R(R)->l2_log_error);
    EXPECT_GT(l2[0], l2[1]);
    EXPECT_GT(l2[1], l2[2]);
    EXPECT_LT(l2[2], 1e-2);
}

TEST(EtaPlus, HROneConvergesToH) {
    const double h1 = std::exp(0.5);
    EXPECT_NEAR(make_h()(1.0), 1.64872, 1e-5);
    double prev = 1e9;
    for (double R : {50.0, 100.0, 200.0, 400.0}) {
        const double err = std::abs(build_h_R(R)->h_R(1.0) - h1);
        EXPECT_LT(err, prev * 1.5) << R;
        prev = err;
    }
    EXPECT_LT(prev, 1e-2);
}

TEST(EtaPlus, TableMatchesDirectKernelIntegral) {
    const auto d = build_h_R(200.0);
    for (double t : {0.3, 0.7, 1.0, 1.3, 1.9}) EXPECT_NEAR(d->h_R(t), h_R_direct(200.0, t), 1e-6) << t;
}

TEST(Export, SampledCsv) {
    std::ostringstream os;
    write_smoothing_csv(os, make_eta_circ(), 3);
    EXPECT_EQ(os.str(), "t,eta\n0,0\n1,1\n2,0\n");
}
