// Acceptance runner: `acceptance C1 C4 ...` (no arguments runs all). Prints
// one PASS/FAIL line per criterion, followed by indented detail lines.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <goldbach_lab/arith.hpp>
#include <goldbach_lab/cli.hpp>
#include <goldbach_lab/expsum.hpp>
#include <goldbach_lab/ladder.hpp>
#include <goldbach_lab/large_sieve.hpp>
#include <goldbach_lab/majorarc.hpp>
#include <goldbach_lab/minorarc.hpp>
#include <goldbach_lab/rigor.hpp>
#include <goldbach_lab/smoothing.hpp>

#include "../support/rigor_fuzz.hpp"

using namespace goldbach_lab;
using mp = boost::multiprecision::cpp_bin_float_50;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::vector<std::string> details;

    void check(bool ok, const std::string& what) {
        details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
        if (!ok) pass = false;
    }
    void note(const std::string& what) { details.push_back("     " + what); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string g(double v) { return fmt(v); }

std::vector<std::uint8_t> trial_sieve(u64 n) {
    std::vector<std::uint8_t> f(n + 1, 1);
    f[0] = 0;
    if (n >= 1) f[1] = 0;
    for (u64 p = 2; p * p <= n; ++p)
        if (f[p])
            for (u64 k = p * p; k <= n; k += p) f[k] = 0;
    return f;
}

// ---------------------------------------------------------------------------

Outcome c1() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const u64 hi = 99999999;
    const auto L = build_ladder(hi, 10000);
    o.note("ladder: " + std::to_string(L.primes.size()) + " rungs, " + std::to_string(L.proth_rungs) +
           " Proth, built in " + g(seconds_since(t0)) + " s");
    o.check((L.validate(true), true), "ladder gap invariants and rung primality");

    VerifyOptions opt;
    const auto s = verify_range(7, hi, L, opt);
    const u64 expected = (hi - 7) / 2 + 1;
    o.check(s.verified == expected, "every odd 7 <= n <= 1e8 has a witness (" + std::to_string(s.verified) + "/" +
                                        std::to_string(expected) + ")");
    o.check(s.max_binary <= L.max_gap + 2, "binary checks within max_gap + 2 (max " + std::to_string(s.max_binary) + ")");

    // Brute-force existence below 1e5 from an independent sieve, and every
    // ladder witness in that range re-certified.
    const u64 small = 99999;
    const auto flags = trial_sieve(small);
    std::vector<std::uint8_t> two(small + 1, 0);
    std::vector<u64> primes;
    for (u64 p = 2; p <= small; ++p)
        if (flags[p]) primes.push_back(p);
    for (std::size_t i = 0; i < primes.size(); ++i)
        for (std::size_t j = i; j < primes.size() && primes[i] + primes[j] <= small; ++j) two[primes[i] + primes[j]] = 1;
    u64 brute_yes = 0;
    for (u64 n = 7; n <= small; n += 2) {
        bool found = false;
        for (u64 p : primes) {
            if (p >= n) break;
            if (two[n - p]) {
                found = true;
                break;
            }
        }
        brute_yes += found;
    }
    std::ostringstream rows;
    VerifyOptions wopt;
    wopt.witnesses = &rows;
    const auto ws = verify_range(7, small, L, wopt);
    std::istringstream is(rows.str());
    std::string line;
    u64 recertified = 0;
    while (std::getline(is, line)) {
        TernaryWitness w;
        char c;
        std::istringstream ls(line);
        ls >> w.n >> c >> w.p >> c >> w.p1 >> c >> w.p2;
        if (w.p + w.p1 + w.p2 == w.n && flags[w.p] && flags[w.p1] && flags[w.p2]) ++recertified;
    }
    const u64 small_count = (small - 7) / 2 + 1;
    o.check(brute_yes == small_count && ws.verified == small_count && recertified == small_count,
            "existence agrees with brute force for odd n <= 1e5 (brute " + std::to_string(brute_yes) + ", ladder " +
                std::to_string(ws.verified) + ", re-certified " + std::to_string(recertified) + ")");
    o.note("runtime " + g(seconds_since(t0)) + " s on " + std::to_string(opt.workers) + " worker(s)");
    return o;
}

Outcome c2() {
    Outcome o;
    try {
        const auto w = certify_binary(4000000000000000002ULL, 2000000000000001301ULL, 1999999999999998701ULL);
        o.check(w.p1 + w.p2 == 4000000000000000002ULL, "4e18+2 = 2000000000000001301 + 1999999999999998701 certified");
    } catch (const std::exception& e) {
        o.check(false, std::string("binary instance: ") + e.what());
    }
    auto wired = [&](double v, const char* text) {
        const mp rel = abs(mp(v) / mp(text) - 1);
        o.check(rel <= mp("1e-12"), std::string("constant ") + text + " wired (rel " + rel.str(3) + ")");
    };
    wired(theorem_R_coeff, "0.27125");
    wired(theorem_R_const, "0.41415");
    wired(theorem_sqrt_coeff, "2.5");
    wired(theorem_power_coeff, "3.2");
    wired(theorem_large_coeff, "0.2727");
    wired(theorem_large_power, "1218");
    wired(theorem_x0, "2.16e20");
    wired(major_error_const, "5.281e-22");
    wired(major_error_q_coeff, "650400");
    wired(major_error_tail, "112");

    // Independent 50-digit evaluation of both branches and of |E|.
    double worst = 0.0;
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double x = std::pow(10.0, 20.5 + 10.0 * unit(gen));
        const u64 q = 1 + static_cast<u64>(std::pow(10.0, 7.0 * unit(gen)));
        const double delta = (unit(gen) - 0.5) * 200.0;
        const auto b = theorem_bound(x, q, delta);
        const mp X = x, Q = q;
        mp ref;
        if (mp(6 * q) * mp(6 * q) * mp(6 * q) > X) {
            ref = mp("0.2727") * pow(X, mp(5) / 6) * pow(log(X), mp(3) / 2) + 1218 * pow(X, mp(2) / 3) * log(X);
        } else {
            mp phi = Q;
            u64 m = q;
            for (u64 p = 2; p * p <= m; ++p)
                if (m % p == 0) {
                    phi = phi / p * (p - 1);
                    while (m % p == 0) m /= p;
                }
            if (m > 1) phi = phi / m * (m - 1);
            const mp d0 = std::max(2.0, std::abs(delta) / 4.0);
            const mp t = d0 * Q;
            const mp R = mp("0.27125") * log(1 + log(4 * t) / (2 * log(9 * cbrt(X) / (mp("2.004") * t)))) + mp("0.41415");
            const mp L = (mp("1.75") * log(d0) + mp("3.25") * log(Q) + mp(80) / 9) / (phi / Q) + mp(80) / 9 * log(Q) +
                         mp(16) / 9 * log(d0) + mp(111) / 5;
            ref = (R * log(t) + mp("0.5")) / sqrt(d0 * phi) * X + mp("2.5") * X / sqrt(d0 * Q) + 2 * X / (d0 * Q) * L +
                  mp("3.2") * pow(X, mp(5) / 6);
        }
        worst = std::max(worst, static_cast<double>(abs(mp(b.total) / ref - 1)));
        const mp E = mp("5.281e-22") + (mp(650400) / sqrt(Q) + 112) / sqrt(X);
        worst = std::max(worst, static_cast<double>(abs(mp(major_error_coefficient(q, x)) / E - 1)));
    }
    o.check(worst <= 1e-12, "theorem bound and |E| vs 50-digit evaluator, 200 points (worst rel " + g(worst) + ")");
    return o;
}

Outcome c3() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    // Λ by trial factorization.
    auto lambda = [](u64 n) {
        if (n < 2) return 0.0;
        for (u64 d = 2; d * d <= n; ++d)
            if (n % d == 0) {
                u64 m = n;
                while (m % d == 0) m /= d;
                return m == 1 ? std::log(static_cast<double>(d)) : 0.0;
            }
        return std::log(static_cast<double>(n));
    };
    for (auto [U, V] : std::vector<std::pair<double, double>>{{10, 10}, {31.6, 31.6}, {100, 5}}) {
        double worst = 0.0;
        for (u64 n = 1; n <= 10000; ++n) worst = std::max(worst, std::abs(vaughan_split(n, U, V).total() - lambda(n)));
        o.check(worst < 1e-9, "Vaughan residual n <= 1e4 at (U,V) = (" + g(U) + "," + g(V) + "): " + g(worst));
    }
    for (const char* name : {"eta2", "gaussian"}) {
        const auto r = l2_full_circle(smoothing_from_name(name), 1e5);
        // Coefficient side recomputed here from an independent sieve.
        const auto eta = smoothing_from_name(name);
        const u64 top = weighted_terms(eta, 1e5).n.back();
        double direct = 0.0;
        for (u64 n = 2; n <= top; ++n) {
            const double l = mangoldt(n);
            if (l == 0.0) continue;
            const double w = l * eta(static_cast<double>(n) / 1e5);
            direct += w * w;
        }
        const double rel = std::abs(r.dft / direct - 1.0);
        o.check(rel <= 1e-10, std::string("Plancherel at x = 1e5 for ") + name + ": rel " + g(rel));
    }
    const auto dft = count_reps_range(7, 10000, {}, RepPath::dft);
    const auto flags = trial_sieve(10000);
    std::vector<u64> r2(10001, 0);
    for (u64 a = 2; a <= 10000; ++a)
        if (flags[a])
            for (u64 b = 2; a + b <= 10000; ++b)
                if (flags[b]) ++r2[a + b];
    u64 mismatches = 0, checked = 0;
    for (u64 n = 7; n <= 10000; n += 2) {
        u64 c = 0;
        for (u64 p = 2; p < n; ++p)
            if (flags[p]) c += r2[n - p];
        ++checked;
        if (dft[n - 7].unweighted != c) ++mismatches;
    }
    o.check(mismatches == 0, "count_reps DFT path equals brute force for " + std::to_string(checked) + " odd n <= 1e4");
    o.note("runtime " + g(seconds_since(t0)) + " s");
    return o;
}

Outcome c4() {
    Outcome o;
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal;

    // Large sieve: half Farey sets, half adversarial near-β spacings.
    u64 ls_fail = 0;
    double ls_worst = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
        std::vector<double> pts;
        double beta;
        if (trial % 2 == 0) {
            const u64 q = 2 + gen() % 60;
            for (u64 j = 0; j < q; ++j) pts.push_back(static_cast<double>(j) / q);
            beta = 1.0 / static_cast<double>(q) * (1.0 - 1e-12);
        } else {
            beta = 0.005 + 0.2 * unit(gen);
            double p = unit(gen) * beta;
            while (true) {
                pts.push_back(p);
                p += beta * (unit(gen) < 0.5 ? 1.0 : 1.0 + 1e-9 + 0.3 * unit(gen));
                if (p >= 1.0 || 1.0 - (p - pts.front()) < beta * 1.01) break;
            }
            beta *= 1.0 - 1e-9;
        }
        std::vector<std::complex<double>> c(1 + gen() % 200);
        const int style = static_cast<int>(gen() % 3);
        const double theta = unit(gen);
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (style == 0) c[k] = {normal(gen), normal(gen)};
            else if (style == 1) c[k] = std::polar(1.0, -2 * pi * theta * static_cast<double>(k));
            else c[k] = std::polar(1.0, -2 * pi * pts[gen() % pts.size()] * static_cast<double>(k));
        }
        const auto r = large_sieve_check(PointSet(pts, beta), c, 1 + gen() % 100000);
        ls_worst = std::max(ls_worst, r.slack);
        if (!r.holds) ++ls_fail;
    }
    o.check(ls_fail == 0, "large sieve, 1e4 trials: " + std::to_string(ls_fail) + " violations (max LHS/RHS " + g(ls_worst) + ")");

    // Min-triplet bound against the brute-forced sum.
    u64 tri_fail = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const u64 q = 2 + gen() % 300;
        const double Q = static_cast<double>(q) * (4.0 + 30.0 * unit(gen));
        u64 a = 1 + gen() % (q - 1);
        while (std::gcd(a, q) != 1) a = a % (q - 1) + 1;
        const double alpha = static_cast<double>(a) / q + (2.0 * unit(gen) - 1.0) / (q * Q);
        const u64 y = static_cast<u64>(unit(gen) * (Q / 2.0 - q));
        const double A = std::exp(12.0 * unit(gen)), B = std::exp(12.0 * unit(gen)), C = std::exp(12.0 * unit(gen));
        double lhs = 0.0;
        for (u64 m = y + 1; m <= y + q; ++m) {
            if (m % q == 0) continue;
            const double s = std::abs(std::sin(pi * std::fmod(alpha * static_cast<double>(m), 1.0)));
            lhs += std::min({A, B / s, C / (s * s)});
        }
        if (lhs > min_triplet_bound(A, B, C, q, TripletMode::exclude_multiples)) ++tri_fail;
    }
    o.check(tri_fail == 0, "min-triplet bound dominates brute force, 1e3 trials: " + std::to_string(tri_fail) + " violations");

    // Mellin bound on 500 points inside its precondition.
    const auto t0 = std::chrono::steady_clock::now();
    u64 mel_fail = 0, mel_err = 0;
    double mel_worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const double sigma = unit(gen);
        const double delta = -4.0 + 8.0 * unit(gen);
        const double floor_tau = std::max(100.0, 4.0 * pi * pi * std::abs(delta));
        const double tau = (unit(gen) < 0.5 ? -1.0 : 1.0) * (floor_tau + 300.0 * unit(gen));
        try {
            const auto r = check_fdelta_bound(sigma, tau, delta);
            mel_worst = std::max(mel_worst, r.slack);
            if (!r.holds) ++mel_fail;
        } catch (const std::exception& e) {
            ++mel_err;
            if (mel_err == 1) o.note(std::string("mellin evaluation error: ") + e.what());
        }
    }
    o.check(mel_fail == 0 && mel_err == 0, "Mellin bound, 500-point grid: " + std::to_string(mel_fail) + " violations, " +
                                               std::to_string(mel_err) + " evaluation errors (max ratio " + g(mel_worst) +
                                               ", " + g(seconds_since(t0)) + " s)");

    // Möbius ratio on the (q ≤ 100) × x grid.
    const auto table = moebius_table(1000000);
    u64 mr_fail = 0, mr_points = 0;
    double mr_worst = 0.0;
    for (double x : {1e3, 1e4, 1e5, 1e6})
        for (u64 q = 1; q <= 100 && static_cast<double>(q) <= x / 10; ++q) {
            const auto r = moebius_ratio(x, q, &table);
            ++mr_points;
            mr_worst = std::max(mr_worst, std::abs(r.sum) / r.bound);
            if (!r.holds) ++mr_fail;
        }
    o.check(mr_fail == 0, "Moebius ratio bound on " + std::to_string(mr_points) + " (q, x) points: " +
                              std::to_string(mr_fail) + " violations (max ratio " + g(mr_worst) + ")");

    const auto m = mertens_sqrt_check(1000000);
    o.check(m.holds, "|sum mu(n)/n| <= sqrt(2/x) for x <= 1e6 (max ratio " + g(m.measured) + ")");
    return o;
}

Outcome c5() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const double x = 1e7;
    const auto eta = make_gaussian();
    const auto terms = weighted_terms(eta, x);
    double worst = 0.0, worst_delta = 0.0, worst_one_sided = 0.0;
    for (int k = -30; k <= 30; ++k) {
        const double delta = k / 10.0;
        const auto S = s_eta(terms, delta / x);
        const double predicted = std::sqrt(2 * pi) * std::exp(-2 * pi * pi * delta * delta) * x;
        const double rel = std::abs(S.value - predicted) / predicted;
        if (rel > worst) {
            worst = rel;
            worst_delta = delta;
        }
        // Diagnostic: the transform of η restricted to t ≥ 0.
        auto f_re = [&](double t) { return std::exp(-t * t / 2) * std::cos(2 * pi * delta * t); };
        auto f_im = [&](double t) { return std::exp(-t * t / 2) * std::sin(2 * pi * delta * t); };
        const std::complex<double> half(boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f_re, 0.0, 40.0, 20, 1e-14),
                                        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f_im, 0.0, 40.0, 20, 1e-14));
        worst_one_sided = std::max(worst_one_sided, std::abs(S.value - half * x) / std::abs(half * x));
        if (k == 0)
            o.note("delta = 0: measured " + g(S.value.real()) + ", predicted " + g(predicted) + ", ratio " +
                   g(S.value.real() / predicted));
    }
    o.check(worst <= 0.02, "S_gaussian(delta/x, x) vs sqrt(2 pi) exp(-2 pi^2 delta^2) x at x = 1e7, |delta| <= 3: worst rel " +
                               g(worst) + " at delta = " + g(worst_delta));
    o.note("diagnostic: against the transform of the Gaussian on t >= 0, worst rel " + g(worst_one_sided));
    o.note("runtime " + g(seconds_since(t0)) + " s");
    return o;
}

Outcome c6() {
    Outcome o;
    const double x = 1e5;
    const auto coeffs = prime_supported_coeffs(make_eta2(), x);
    const auto r = prime_support_gain(10, x, coeffs);
    o.check(r.holds, "prime-support gain at x = 1e5, s = 10: measured " + g(r.measured) + " <= factor " + g(r.bound));
    double refined = 0.0;
    for (const auto& [k, v] : r.terms)
        if (k == "refined_factor") refined = v;
    o.note("refined factor " + g(refined) + (r.measured > refined ? " (exceeded: observation)" : " (not exceeded)"));
    return o;
}

Outcome c7() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto rep = minor_arc_survey(1e6, 1000, 1, 20);
    const double secs = seconds_since(t0);
    std::ostringstream csv;
    write_survey_csv(csv, rep);
    std::istringstream is(csv.str());
    std::string line;
    std::getline(is, line);
    const bool header_ok = line.find("validity") != std::string::npos;
    u64 rows = 0, flagged = 0;
    while (std::getline(is, line)) {
        ++rows;
        if (line.find("outside_validity") != std::string::npos || line.find(",valid\n") != std::string::npos || line.ends_with(",valid")) ++flagged;
    }
    o.check(rep.rows.size() == 1000 && rows == 1000, "survey emitted 1000 rows");
    o.check(header_ok && flagged == rows, "every row flagged with validity status (" + std::to_string(flagged) + ")");
    o.check(secs <= 600.0, "survey runtime " + g(secs) + " s <= 600 s");
    const auto summary = nlohmann::json::parse(survey_summary_json(rep));
    o.note("summary: " + summary.dump());
    return o;
}

Outcome c8() {
    Outcome o;
    std::mt19937_64 gen(8);
    fuzz::FuzzStats st;
    for (int i = 0; i < 100000; ++i) fuzz::run_case(gen, st);
    o.check(st.violations == 0, "containment fuzz: " + std::to_string(st.cases) + " cases, " + std::to_string(st.evaluated) +
                                    " evaluable, " + std::to_string(st.violations) + " escapes" +
                                    (st.violations ? " (first: " + st.first_violation + ")" : ""));
    const auto r = rigor::bisection_max(rigor::eta_circ_expr(), rigor::Interval(0.0, 2.0), 1e-6);
    auto f = [](const mp& t) { return pow(t, 3) * pow(2 - t, 3) * exp(-(t - 1) * (t - 1) / 2); };
    mp best = 0, arg = 0;
    for (int k = 0; k <= 200000; ++k) {
        const mp t = mp(k) / 100000;
        const mp v = f(t);
        if (v > best) {
            best = v;
            arg = t;
        }
    }
    mp a = arg - mp(1) / 100000, b = arg + mp(1) / 100000;
    const mp phi = (sqrt(mp(5)) - 1) / 2;
    for (int it = 0; it < 150; ++it) {
        const mp c = b - phi * (b - a), d = a + phi * (b - a);
        if (f(c) > f(d)) b = d;
        else a = c;
    }
    best = std::max(best, f((a + b) / 2));
    const bool contains = mp(r.enclosure.lo) <= best && best <= mp(r.enclosure.hi);
    o.check(r.enclosure.width() <= 1e-6 && contains,
            "bisection on eta_circ over [0,2]: [" + g(r.enclosure.lo) + ", " + g(r.enclosure.hi) + "], width " +
                g(r.enclosure.width()) + ", dense maximum " + best.str(17));
    return o;
}

Outcome c9() {
    Outcome o;
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "goldbach_lab_acceptance";
    fs::create_directories(dir);
    auto slurp = [](const fs::path& p) {
        std::ifstream is(p, std::ios::binary);
        std::stringstream ss;
        ss << is.rdbuf();
        return ss.str();
    };
    std::ostringstream log, err;
    cli::RunConfig e;
    e.command = "expsum";
    e.x = 1e5;
    e.points = 1000;
    e.workers = 1;
    e.out = (dir / "expsum_w1.csv").string();
    const int e1 = cli::run(e, log, err);
    e.workers = 4;
    e.out = (dir / "expsum_w4.csv").string();
    const int e4 = cli::run(e, log, err);
    const auto ea = slurp(dir / "expsum_w1.csv"), eb = slurp(dir / "expsum_w4.csv");
    o.check(e1 == 0 && e4 == 0 && !ea.empty() && ea == eb,
            "expsum CSV byte-identical with 1 and 4 workers (" + std::to_string(ea.size()) + " bytes)");

    cli::RunConfig v;
    v.command = "verify";
    v.n_lo = 7;
    v.n_hi = 2000001;
    v.max_gap = 10000;
    v.workers = 1;
    v.out = (dir / "verify_w1.json").string();
    v.witnesses = (dir / "witness_w1.csv").string();
    const int v1 = cli::run(v, log, err);
    v.workers = 4;
    v.out = (dir / "verify_w4.json").string();
    v.witnesses = (dir / "witness_w4.csv").string();
    const int v4 = cli::run(v, log, err);
    const auto va = slurp(dir / "verify_w1.json"), vb = slurp(dir / "verify_w4.json");
    const auto wa = slurp(dir / "witness_w1.csv"), wb = slurp(dir / "witness_w4.csv");
    o.check(v1 == 0 && v4 == 0 && !va.empty() && va == vb && wa == wb,
            "verify summary and witness file byte-identical with 1 and 4 workers");
    if (!err.str().empty()) o.note(err.str());
    fs::remove_all(dir);
    return o;
}

const std::map<std::string, std::pair<std::string, std::function<Outcome()>>> criteria = {
    {"C1", {"ternary verification to 1e8 via the prime ladder", c1}},
    {"C2", {"constants as data, arbitrary-precision cross-check", c2}},
    {"C3", {"exact identities", c3}},
    {"C4", {"inequality suites", c4}},
    {"C5", {"major-arc accuracy at x = 1e7", c5}},
    {"C6", {"prime-support gain", c6}},
    {"C7", {"minor-arc survey", c7}},
    {"C8", {"rigor module", c8}},
    {"C9", {"determinism across worker counts", c9}},
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> ids;
    for (int i = 1; i < argc; ++i) ids.emplace_back(argv[i]);
    if (ids.empty())
        for (const auto& [id, _] : criteria) ids.push_back(id);
    int failures = 0;
    for (const auto& id : ids) {
        const auto it = criteria.find(id);
        if (it == criteria.end()) {
            std::cerr << "unknown criterion " << id << '\n';
            return 64;
        }
        Outcome out;
        try {
            out = it->second.second();
        } catch (const std::exception& e) {
            out.check(false, std::string("exception: ") + e.what());
        }
        std::cout << id << ' ' << (out.pass ? "PASS" : "FAIL") << ": " << it->second.first << '\n';
        for (const auto& d : out.details) std::cout << "    " << d << '\n';
        std::cout.flush();
        if (!out.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
