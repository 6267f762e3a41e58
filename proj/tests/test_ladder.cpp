#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <goldbach_lab/ladder.hpp>

using namespace goldbach_lab;

namespace {

bool trial_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("goldbach_lab_test_" + name);
}

}  // namespace

TEST(Binary, Examples) {
    const auto w4 = binary_check(4);
    EXPECT_EQ(w4.p1, 2u);
    EXPECT_EQ(w4.p2, 2u);
    const auto w = binary_check(100);
    EXPECT_EQ(w.p1, 3u);
    EXPECT_EQ(w.p2, 97u);
    EXPECT_THROW(binary_check(7), DomainError);
    EXPECT_THROW(binary_check(2), DomainError);
    EXPECT_THROW(binary_check(binary_desk_limit + 2), DomainError);
}

TEST(Binary, SmallestSummandMatchesBruteForce) {
    for (u64 n = 6; n <= 5000; n += 2) {
        u64 p = 3;
        while (!(trial_prime(p) && trial_prime(n - p))) p += 2;
        ASSERT_EQ(binary_check(n).p1, p) << n;
    }
}

TEST(Binary, LargeCertifiedInstance) {
    const u64 n = 4000000000000000002ULL;
    const auto w = certify_binary(n, 2000000000000001301ULL, 1999999999999998701ULL);
    EXPECT_EQ(w.p1 + w.p2, n);
    EXPECT_THROW(certify_binary(n, 2000000000000001301ULL, 1999999999999998700ULL), VerificationFailure);
    EXPECT_THROW(certify_binary(n, 2000000000000001303ULL, 1999999999999998699ULL), VerificationFailure);
}

TEST(Proth, Examples) {
    // 13 = 3·2² + 1, 97 = 3·2⁵ + 1, 3·2⁴ + 1 = 49 = 7².
    auto c = proth_test(3, 2);
    EXPECT_EQ(c.N, 13u);
    EXPECT_EQ(c.status, ProthStatus::prime);
    EXPECT_EQ(proth_test(3, 5).status, ProthStatus::prime);
    c = proth_test(3, 4);
    EXPECT_EQ(c.N, 49u);
    EXPECT_EQ(c.status, ProthStatus::composite);
    // 5·2⁸ + 1 = 1281 = 3·7·61.
    EXPECT_EQ(proth_test(5, 8).status, ProthStatus::composite);
    EXPECT_THROW(proth_test(4, 5), DomainError);
    EXPECT_THROW(proth_test(33, 5), DomainError);
    EXPECT_NE(c.policy.find("small primes"), std::string::npos);
}

TEST(Proth, AgreesWithMillerRabinBelow1e9) {
    u64 count = 0;
    for (const auto& [k, m] : proth_numbers_in(3, 1000000000)) {
        const auto c = proth_test(k, m);
        ASSERT_NE(c.status, ProthStatus::inconclusive) << c.N;
        ASSERT_EQ(c.status == ProthStatus::prime, is_prime_u64(c.N)) << c.N;
        if (c.status == ProthStatus::prime && c.witness != 0) {
            ASSERT_EQ(powmod(c.witness, (c.N - 1) / 2, c.N), c.N - 1);
        }
        ++count;
    }
    u64 want = 0;
    for (unsigned m = 1; m < 30; ++m)
        for (u64 k = 1; k < (u64{1} << m); k += 2)
            if ((k << m) + 1 <= 1000000000 && (k << m) + 1 >= 3) ++want;
    EXPECT_EQ(count, want);
}

TEST(Proth, Enumeration) {
    const auto v = proth_numbers_in(1, 100);
    std::vector<u64> got;
    for (const auto& [k, m] : v) got.push_back((k << m) + 1);
    std::vector<u64> want;
    for (u64 N = 100; N >= 2; --N)
        for (unsigned m = 1; m < 7; ++m) {
            const u64 step = u64{1} << m;
            if ((N - 1) % step == 0) {
                const u64 k = (N - 1) / step;
                if (k % 2 == 1 && k < step) want.push_back(N);
            }
        }
    EXPECT_EQ(got, want);
}

TEST(Ladder, SmallLadderInvariants) {
    const auto L = build_ladder(100, 20);
    EXPECT_EQ(L.primes.front(), 3u);
    EXPECT_GE(L.primes.back(), 100u);
    for (std::size_t i = 1; i < L.primes.size(); ++i) {
        const u64 g = L.primes[i] - L.primes[i - 1];
        EXPECT_GE(g, 4u);
        EXPECT_LE(g, 20u);
        EXPECT_TRUE(trial_prime(L.primes[i]));
    }
    EXPECT_NO_THROW(L.validate());
    EXPECT_GT(L.proth_rungs, 0u);
}

TEST(Ladder, BrokenLaddersRejected) {
    Ladder L;
    L.primes = {3, 7, 9, 13};
    L.max_gap = 20;
    L.limit = 13;
    EXPECT_THROW(L.validate(), VerificationFailure);
    L.primes = {3, 5, 11};
    L.limit = 11;
    EXPECT_THROW(L.validate(), VerificationFailure);
    L.primes = {3, 7, 37};
    L.limit = 37;
    EXPECT_THROW(L.validate(), VerificationFailure);
    EXPECT_THROW(build_ladder(5, 20), DomainError);
    EXPECT_THROW(build_ladder(100, 3), DomainError);
}

TEST(Ladder, RandomParametersValid) {
    // Windows narrower than a prime gap cannot be bridged.
    EXPECT_THROW(build_ladder(1000, 6), VerificationFailure);
    for (u64 gap : {300ULL, 1000ULL, 5000ULL})
        for (u64 limit : {1000ULL, 123457ULL, 10000000ULL}) {
            const auto L = build_ladder(limit, gap);
            ASSERT_NO_THROW(L.validate()) << gap << " " << limit;
        }
}

TEST(Ternary, Examples) {
    const auto L = build_ladder(1000, 20);
    const auto w7 = ternary_verify(7, L);
    EXPECT_EQ(w7.p, 3u);
    EXPECT_EQ(w7.p1, 2u);
    EXPECT_EQ(w7.p2, 2u);
    const auto w9 = ternary_verify(9, L);
    u64 expect_p = 0;
    for (u64 p : L.primes)
        if (p < 9 && 9 - p != 2) expect_p = p;
    EXPECT_EQ(w9.p, expect_p);
    EXPECT_TRUE(recertify(w9));
    EXPECT_THROW(ternary_verify(8, L), DomainError);
    EXPECT_THROW(ternary_verify(5, L), DomainError);
}

TEST(Ternary, StepsDownWhenRemainderIsTwo) {
    const auto L = build_ladder(1000, 20);
    for (std::size_t i = 1; i + 1 < L.primes.size(); ++i) {
        const u64 n = L.primes[i] + 2;
        if (n >= L.primes[i + 1]) continue;
        const auto w = ternary_verify(n, L);
        EXPECT_EQ(w.p, L.primes[i - 1]) << n;
        EXPECT_TRUE(recertify(w));
        EXPECT_GE(n - w.p, 4u);
    }
}

TEST(Verify, SmallRangeWithWitnesses) {
    const auto L = build_ladder(1000, 20);
    std::ostringstream rows;
    VerifyOptions opt;
    opt.witnesses = &rows;
    const auto s = verify_range(7, 9, L, opt);
    EXPECT_EQ(s.verified, 2u);
    std::istringstream is(rows.str());
    std::string line;
    int count = 0;
    while (std::getline(is, line)) {
        TernaryWitness w;
        char c;
        std::istringstream ls(line);
        ls >> w.n >> c >> w.p >> c >> w.p1 >> c >> w.p2;
        w.n = 7 + 2 * count;
        EXPECT_TRUE(recertify(w)) << line;
        ++count;
    }
    EXPECT_EQ(count, 2);
}

TEST(Verify, RangeTo1e5Recertified) {
    const auto L = build_ladder(100001, 1000);
    std::ostringstream rows;
    VerifyOptions opt;
    opt.witnesses = &rows;
    opt.chunk = 4096;
    const auto s = verify_range(7, 99999, L, opt);
    EXPECT_EQ(s.verified, (99999u - 7u) / 2 + 1);
    EXPECT_LE(s.max_binary, 1002u);
    std::istringstream is(rows.str());
    std::string line;
    u64 expect_n = 7;
    while (std::getline(is, line)) {
        TernaryWitness w;
        char c;
        std::istringstream ls(line);
        ls >> w.n >> c >> w.p >> c >> w.p1 >> c >> w.p2;
        ASSERT_EQ(w.n, expect_n);
        ASSERT_TRUE(trial_prime(w.p) && trial_prime(w.p1) && trial_prime(w.p2)) << line;
        ASSERT_EQ(w.p + w.p1 + w.p2, w.n);
        expect_n += 2;
    }
    EXPECT_EQ(expect_n, 100001u);
}

TEST(Verify, DeterministicAcrossWorkers) {
    const auto L = build_ladder(2000001, 5000);
    VerifyOptions a, b;
    a.workers = 1;
    b.workers = 3;
    a.chunk = b.chunk = 10000;
    const auto s1 = verify_range(7, 2000001, L, a);
    const auto s3 = verify_range(7, 2000001, L, b);
    EXPECT_EQ(s1.to_json(), s3.to_json());
}

TEST(Verify, CheckpointResume) {
    const auto L = build_ladder(300001, 2000);
    const auto path = temp_path("checkpoint.json");
    std::filesystem::remove(path);
    VerifyOptions opt;
    opt.chunk = 5000;
    opt.workers = 2;
    const auto full = verify_range(7, 300001, L, opt);
    opt.checkpoint = path;
    // Mid-range checkpoint taken from a run over the first four chunks.
    VerifySummary part = full;
    {
        VerifyOptions ref;
        ref.chunk = 5000;
        ref.workers = 2;
        const auto head = verify_range(7, 7 + 2 * (4 * 5000 - 1), L, ref);
        part.verified = head.verified;
        part.max_binary = head.max_binary;
        part.max_p1 = head.max_p1;
        part.digest = head.digest;
        part.last_verified = head.hi;
    }
    detail::write_checkpoint(path, part);
    const auto resumed = verify_range(7, 300001, L, opt);
    EXPECT_EQ(resumed.to_json(), full.to_json());
    // A finished checkpoint resumes to the same summary with no work.
    const auto again = verify_range(7, 300001, L, opt);
    EXPECT_EQ(again.to_json(), full.to_json());
    // Mismatched chunk size is refused.
    opt.chunk = 4000;
    EXPECT_THROW(verify_range(7, 300001, L, opt), DomainError);
    std::filesystem::remove(path);
}

TEST(Verify, Errors) {
    const auto L = build_ladder(1000, 20);
    EXPECT_THROW(verify_range(8, 99, L), DomainError);
    EXPECT_THROW(verify_range(7, 1001, L), DomainError);
    EXPECT_THROW(verify_range(99, 7, L), DomainError);
}

TEST(LadderFile, RoundTripAndCorruption) {
    const auto L = build_ladder(100000, 500);
    const auto path = temp_path("ladder.bin");
    write_ladder(L, path);
    const auto R = read_ladder(path);
    EXPECT_EQ(R.primes, L.primes);
    EXPECT_EQ(R.hash(), L.hash());
    {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(8 * 5 + 8 * 3);
        const char junk = 0x55;
        f.write(&junk, 1);
    }
    EXPECT_THROW(read_ladder(path), DomainError);
    std::filesystem::remove(path);
    EXPECT_THROW(read_ladder(path), DomainError);
}
