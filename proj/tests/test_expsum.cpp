#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include <goldbach_lab/expsum.hpp>

using namespace goldbach_lab;

namespace {

constexpr double pi = std::numbers::pi;

/// Λ(n) by trial division.
double lambda_oracle(u64 n) {
    if (n < 2) return 0.0;
    u64 p = 0;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            p = d;
            break;
        }
    if (p == 0) return std::log(static_cast<double>(n));
    u64 m = n;
    while (m % p == 0) m /= p;
    return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

bool is_prime_oracle(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

u64 triples_oracle(u64 n) {
    u64 c = 0;
    for (u64 a = 2; a < n; ++a)
        for (u64 b = 2; a + b < n; ++b)
            if (is_prime_oracle(a) && is_prime_oracle(b) && is_prime_oracle(n - a - b)) ++c;
    return c;
}

}  // namespace

TEST(SEta, ChebyshevPsiAt100) {
    const auto s = s_eta(make_sharp(), 0.0, 100.0);
    double psi = 0.0;
    for (u64 n = 1; n <= 100; ++n) psi += lambda_oracle(n);
    EXPECT_NEAR(s.value.real(), psi, 1e-10);
    EXPECT_NEAR(s.value.real(), 94.0453, 1e-4);
    EXPECT_EQ(s.value.imag(), 0.0);
}

TEST(SEta, ZeroAngleIsReal) {
    for (const char* name : {"gaussian", "eta2", "eta_circ", "t2_gaussian"}) {
        const auto s = s_eta(smoothing_from_name(name), 0.0, 5000.0);
        EXPECT_LE(std::abs(s.value.imag()), 1e-12 * std::abs(s.value.real())) << name;
    }
}

TEST(SEta, MatchesReversedOrderSum) {
    const double x = 1e4;
    const auto g = make_gaussian();
    const auto s = s_eta(g, 0.5, x);
    std::complex<long double> acc = 0;
    u64 terms = 0;
    for (u64 n = static_cast<u64>(g.support().hi * x); n >= 1; --n) {
        const double e = g(static_cast<double>(n) / x);
        const double l = lambda_oracle(n);
        if (l == 0.0 || !(e > effective_cutoff)) continue;
        ++terms;
        acc += static_cast<long double>(l * e) * (n % 2 ? -1.0L : 1.0L);
    }
    const std::complex<double> ref(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
    EXPECT_LE(std::abs(s.value - ref), 1e-9 * std::abs(ref));
    EXPECT_EQ(s.terms, terms);
}

TEST(SEta, TrivialBound) {
    const auto t = weighted_terms(make_gaussian(), 2e4);
    const double top = s_eta(t, 0.0).value.real();
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const auto s = s_eta(t, unit(gen));
        ASSERT_LE(std::abs(s.value), top * (1.0 + 1e-12));
        ASSERT_LE(std::abs(s.value), s.abs_sum * (1.0 + 1e-12));
    }
}

TEST(SEta, WorkerCountDoesNotChangeBits) {
    const auto t = weighted_terms(make_eta2(), 3e5);
    for (double alpha : {0.1234, 1.0 / 3.0, 0.77}) {
        const auto a = s_eta(t, alpha, 1);
        for (unsigned w : {2u, 3u, 8u}) {
            const auto b = s_eta(t, alpha, w);
            EXPECT_EQ(a.value.real(), b.value.real());
            EXPECT_EQ(a.value.imag(), b.value.imag());
        }
    }
}

TEST(SEta, RejectsSmallScale) { EXPECT_THROW(s_eta(make_gaussian(), 0.1, 1.0), DomainError); }

TEST(SEtaRational, MatchesFloatingAngle) {
    const auto t = weighted_terms(make_eta_circ(), 1e4);
    for (auto [a, q, d] : std::vector<std::tuple<i64, u64, double>>{{1, 3, 0.0}, {2, 5, 1.5}, {-1, 7, -3.0}}) {
        const auto r = s_eta_rational(t, a, q, d);
        const auto f = s_eta(t, static_cast<double>(a) / static_cast<double>(q) + d / t.x);
        EXPECT_LE(std::abs(r.value - f.value), 1e-9 * f.abs_sum);
    }
}

TEST(SEtaChi, TrivialCharacterIsPlainSum) {
    const auto chi = characters_mod(1).front();
    for (double delta : {0.0, 0.7, -2.5}) {
        const auto a = s_eta_chi(make_gaussian(), chi, delta, 1e4);
        const auto b = s_eta(make_gaussian(), delta / 1e4, 1e4);
        EXPECT_LE(std::abs(a.value - b.value), 1e-12 * a.abs_sum) << delta;
    }
}

TEST(SEtaChi, ResidueClassRegrouping) {
    const double x = 1e3;
    const auto eta = make_eta_circ();
    const auto chars = characters_mod(3);
    for (const auto& chi : chars) {
        const auto s = s_eta_chi(eta, chi, 0.0, x);
        // Σ_r χ(r) Σ_{n ≡ r mod 3} Λ(n) η(n/x)
        double by_class[3] = {0.0, 0.0, 0.0};
        for (u64 n = 1; n <= 2000; ++n) by_class[n % 3] += lambda_oracle(n) * eta(static_cast<double>(n) / x);
        std::complex<double> ref = 0;
        for (u64 r = 0; r < 3; ++r) ref += chi(r) * by_class[r];
        EXPECT_LE(std::abs(s.value - ref), 1e-11 * s.abs_sum);
    }
}

TEST(SEtaChi, RealCharacterGivesRealSum) {
    for (u64 q : {4ULL, 5ULL, 8ULL, 12ULL})
        for (const auto& chi : characters_mod(q)) {
            bool real = true;
            for (u64 n = 0; n < q; ++n) real = real && std::abs(chi(n).imag()) < 1e-15;
            const auto s = s_eta_chi(make_gaussian(), chi, 0.0, 3000.0);
            if (real) {
                EXPECT_LE(std::abs(s.value.imag()), 1e-12 * s.abs_sum);
            }
        }
}

TEST(LinearCombination, TrivialModulus) {
    const double x = 1e4;
    const auto r = linear_combination_check(make_gaussian(), 0, 1, 1.25, x);
    const double s = std::abs(s_eta(make_gaussian(), 1.25 / x, x).value);
    EXPECT_TRUE(r.holds);
    EXPECT_LT(r.measured / s, std::pow(std::log(x), 2) * std::sqrt(x) / x);
}

TEST(LinearCombination, ModulusThree) {
    const auto r = linear_combination_check(make_gaussian(), 1, 3, 0.0, 1e4);
    EXPECT_TRUE(r.holds);
    // The correction only involves powers of 3.
    double mass = 0.0;
    for (u64 m = 3; m <= 90000; m *= 3) mass += std::log(3.0) * make_gaussian()(static_cast<double>(m) / 1e4);
    EXPECT_LE(r.measured, 3.0 * mass);
}

TEST(LinearCombination, CoefficientsAreGaussSums) {
    for (u64 q = 1; q <= 50; ++q) {
        const i64 a = q == 1 ? 0 : 1;
        std::vector<CharacterCoefficient> coeffs;
        const auto r = linear_combination_check(make_eta_circ(), a, q, 0.5, 2000.0, &coeffs);
        EXPECT_FALSE(r.has_flag("coefficient above sqrt(d)/phi(q)")) << q;
        const auto chars = characters_mod(q);
        ASSERT_EQ(coeffs.size(), chars.size());
        double phi = 0.0;
        for (u64 m = 1; m <= q; ++m) phi += std::gcd(m, q) == 1;
        for (std::size_t i = 0; i < chars.size(); ++i) {
            std::complex<double> tau = 0;
            for (u64 m = 0; m < q; ++m) tau += std::conj(chars[i](m)) * std::polar(1.0, 2 * pi * m / q);
            const auto c = chars[i](static_cast<u64>(a)) * tau / phi;
            EXPECT_NEAR(std::abs(coeffs[i].c - c), 0.0, 1e-12) << q;
            EXPECT_LE(std::abs(c), std::sqrt(static_cast<double>(chars[i].conductor())) / phi + 1e-12) << q;
            EXPECT_EQ(coeffs[i].d, chars[i].conductor());
        }
    }
}

TEST(CountReps, SmallExamples) {
    EXPECT_EQ(count_reps(7).unweighted, 3u);
    EXPECT_EQ(count_reps(9).unweighted, 4u);
    EXPECT_EQ(count_reps(11).unweighted, triples_oracle(11));
    EXPECT_EQ(count_reps(11).unweighted, 6u);
    for (u64 n = 7; n <= 301; n += 2) EXPECT_EQ(count_reps(n, {}, RepPath::brute).unweighted, triples_oracle(n)) << n;
}

TEST(CountReps, DftMatchesBruteForceExactly) {
    const auto a = count_reps_range(7, 10000);
    const auto b = count_reps_range(7, 10000, {}, RepPath::brute);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].n % 2 == 0) continue;
        ASSERT_EQ(a[i].unweighted, b[i].unweighted) << a[i].n;
        ASSERT_NEAR(a[i].weighted, b[i].weighted, 1e-6 * b[i].weighted) << a[i].n;
    }
}

TEST(CountReps, WeightedPathsAgree) {
    const WeightTriple w{make_eta_circ(), make_eta2(), make_gaussian(), 3000.0};
    const auto a = count_reps_range(4001, 4101, w);
    const auto b = count_reps_range(4001, 4101, w, RepPath::brute);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i].weighted, b[i].weighted, 1e-6 * std::abs(b[i].weighted));
}

TEST(CountReps, SupportEquivalence) {
    for (const auto& r : count_reps_range(7, 3000)) EXPECT_EQ(r.unweighted > 0, r.weighted > 1e-9) << r.n;
}

TEST(CountReps, FlagsAndLimits) {
    EXPECT_TRUE(std::find(count_reps(8).flags.begin(), count_reps(8).flags.end(), "even n") != count_reps(8).flags.end());
    EXPECT_TRUE(count_reps(9).flags.empty());
    EXPECT_THROW(count_reps(5), DomainError);
    EXPECT_THROW(count_reps(10001, {}, RepPath::brute), ResourceError);
    EXPECT_THROW(count_reps(reps_limit_dft + 1), ResourceError);
}

TEST(Plancherel, DeskScale) {
    for (double x : {1e3, 1e4, 1e5}) {
        const auto eta = make_eta2();
        const auto p = l2_full_circle(eta, x);
        double direct = 0.0;
        for (u64 n = 1; n <= static_cast<u64>(x); ++n) {
            const double w = lambda_oracle(n) * eta(static_cast<double>(n) / x);
            direct += w * w;
        }
        EXPECT_LT(std::abs(p.dft - direct) / direct, 1e-10) << x;
    }
}

TEST(ArcIntegral, FullCircleIsConvolution) {
    const double x = 500.0;
    const u64 n = 1001;
    const auto ep = build_eta_plus(200.0);
    const auto es = make_eta_star(49.0);
    const auto I = arc_integral(ep, es, n, x, {{-0.5, 0.5}});
    const auto c = count_reps(n, WeightTriple{ep, ep, es, x});
    EXPECT_NEAR(I.value.real(), c.weighted, 1e-9 * std::abs(c.weighted));
    EXPECT_NEAR(I.value.imag(), 0.0, 1e-9 * std::abs(c.weighted));
    EXPECT_NEAR(std::abs(I.full_circle - I.value), 0.0, 1e-9 * std::abs(c.weighted));
}

TEST(ArcIntegral, EmptyAndPartition) {
    const double x = 500.0;
    const auto ep = build_eta_plus(200.0);
    const auto es = make_eta_star(49.0);
    EXPECT_EQ(arc_integral(ep, es, 1001, x, {}).value, std::complex<double>(0.0, 0.0));
    const std::vector<ArcInterval> arcs{{-0.01, 0.01}, {0.49, 0.51}, {1.0 / 3 - 0.005, 1.0 / 3 + 0.005}};
    const auto major = arc_integral(ep, es, 1001, x, arcs);
    ArcIntegralOptions opt;
    opt.complement = true;
    const auto minor = arc_integral(ep, es, 1001, x, arcs, opt);
    EXPECT_EQ(major.N, minor.N);
    EXPECT_LE(std::abs(major.value + minor.value - major.full_circle), 1e-9 * std::abs(major.full_circle));
}

TEST(ArcIntegral, CoarseGridRejected) {
    ArcIntegralOptions opt;
    opt.N = 1024;
    EXPECT_THROW(arc_integral(make_eta_circ(), make_eta2(), 101, 100.0, {{0.1, 0.1 + 1e-4}}, opt), PrecisionError);
}

TEST(MajorArcPeaking, SmallDenominatorsStandOut) {
    const double x = 1e6;
    const auto t = weighted_terms(make_gaussian(), x);
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> sample;
    for (int i = 0; i < 1000; ++i) sample.push_back(std::abs(s_eta(t, unit(gen)).value));
    std::nth_element(sample.begin(), sample.begin() + 500, sample.end());
    const double median = sample[500];
    for (u64 q : {1ULL, 2ULL, 3ULL, 5ULL})
        for (double d : {-4.0, -1.0, 0.0, 2.5, 4.0}) {
            const auto s = s_eta_rational(t, 1, q, d);
            EXPECT_GE(std::abs(s.value), 5.0 * median) << q << " " << d;
        }
}

TEST(Export, CsvRow) {
    ExpSum s;
    s.alpha = 0.25;
    s.value = {3.0, -4.0};
    std::ostringstream os;
    write_expsum_csv_header(os);
    write_expsum_csv_row(os, s);
    EXPECT_EQ(os.str(), "alpha,re,im,abs\n0.25,3,-4,5\n");
}
