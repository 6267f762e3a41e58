#pragma once

// Desk-scale ternary verification: every odd n is reduced to a binary check
// of size at most max_gap + 2 by subtracting a rung of a prime ladder.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "arith.hpp"
#include "budget.hpp"
#include "detail/parallel.hpp"
#include "errors.hpp"

namespace goldbach_lab {

inline constexpr u64 binary_desk_limit = 10'000'000'000ULL;
inline constexpr u64 ladder_default_limit = 10'000'000'000ULL;
inline constexpr u64 ladder_default_max_gap = 1'000'000;

struct BinaryWitness {
    u64 n = 0;
    u64 p1 = 0;
    u64 p2 = 0;
};

/// Smallest prime p1 with n − p1 prime, both certified by deterministic
/// Miller–Rabin.
inline BinaryWitness binary_check(u64 n, u64 limit = binary_desk_limit) {
    if (n % 2 != 0) throw DomainError("binary_check: n must be even");
    if (n < 4) throw DomainError("binary_check: n must be at least 4");
    if (n > limit) throw DomainError("binary_check: n above desk limit");
    if (n == 4) return {4, 2, 2};
    for (u64 p = 3; p <= n / 2; p += 2)
        if (is_prime_u64(p) && is_prime_u64(n - p)) return {n, p, n - p};
    throw VerificationFailure("binary_check: no decomposition found for n = " + std::to_string(n) +
                              " (scanned odd p1 in [3, " + std::to_string(n / 2) + "])");
}

/// Certifies a given decomposition n = p1 + p2 without scanning.
inline BinaryWitness certify_binary(u64 n, u64 p1, u64 p2) {
    if (n % 2 != 0) throw DomainError("certify_binary: n must be even");
    if (p1 > n || p1 + p2 != n) throw VerificationFailure("certify_binary: p1 + p2 != n");
    if (!is_prime_u64(p1) || !is_prime_u64(p2)) throw VerificationFailure("certify_binary: summand not prime");
    return {n, p1, p2};
}

// ---------------------------------------------------------------------------
// Proth numbers

enum class ProthStatus { prime, composite, inconclusive };

inline const char* proth_status_name(ProthStatus s) {
    switch (s) {
        case ProthStatus::prime: return "prime";
        case ProthStatus::composite: return "composite";
        default: return "inconclusive";
    }
}

inline constexpr const char* proth_witness_policy = "small primes a = 3, 5, 7, ... < 200 with Jacobi(a, N) = -1";

struct ProthCertificate {
    u64 k = 0;
    unsigned m = 0;
    u64 N = 0;
    ProthStatus status = ProthStatus::inconclusive;
    u64 witness = 0;  // the base a deciding the status, 0 if none
    std::string policy = proth_witness_policy;
};

/// Proth's theorem for N = k·2^m + 1, k odd, k < 2^m: N is prime iff
/// a^((N−1)/2) ≡ −1 mod N for some a, and for a with Jacobi(a, N) = −1 the
/// congruence fails only if N is composite.
inline ProthCertificate proth_test(u64 k, unsigned m) {
    if (k % 2 == 0) throw DomainError("proth_test: k must be odd");
    if (m < 1 || m > 63) throw DomainError("proth_test: m out of range");
    if (k >= (u64{1} << m)) throw DomainError("proth_test: k must be below 2^m");
    if (m >= 32 && k > ((~u64{0}) - 1) >> m) throw DomainError("proth_test: N does not fit 64 bits");
    ProthCertificate c;
    c.k = k;
    c.m = m;
    c.N = (k << m) + 1;
    const u64 N = c.N;
    const u64 e = (N - 1) / 2;
    // A square has no base with Jacobi symbol −1.
    {
        u64 r = std::min<u64>(static_cast<u64>(std::sqrt(static_cast<double>(N))), (u64{1} << 32) - 1);
        while (r > 0 && r * r > N) --r;
        while (r + 1 < (u64{1} << 32) && (r + 1) * (r + 1) <= N) ++r;
        if (r * r == N && r > 1) {
            c.status = ProthStatus::composite;
            c.witness = 0;
            c.policy += "; perfect square";
            return c;
        }
    }
    for (u64 a = 3; a < 200; a += 2) {
        bool small_prime = true;
        for (u64 d = 3; d * d <= a; d += 2)
            if (a % d == 0) small_prime = false;
        if (!small_prime) continue;
        if (a >= N) break;
        if (N % a == 0) {
            c.status = ProthStatus::composite;
            c.witness = a;
            return c;
        }
        if (jacobi(a, N) != -1) continue;
        c.witness = a;
        c.status = powmod(a, e, N) == N - 1 ? ProthStatus::prime : ProthStatus::composite;
        return c;
    }
    // Small N without a usable base.
    if (N < 200 * 200) {
        c.status = ProthStatus::prime;
        for (u64 d = 2; d * d <= N; ++d)
            if (N % d == 0) c.status = ProthStatus::composite;
        c.policy += "; trial division below 200^2";
        return c;
    }
    return c;
}

/// Proth numbers k·2^m + 1 (k odd, k < 2^m) in [lo, hi], descending.
inline std::vector<std::pair<u64, unsigned>> proth_numbers_in(u64 lo, u64 hi) {
    std::vector<std::tuple<u64, u64, unsigned>> found;
    for (unsigned m = 1; m < 63; ++m) {
        const u64 step = u64{1} << m;
        if (hi < step + 1) break;
        const u64 kmin = lo <= 1 ? 1 : (lo - 1 + step - 1) / step;
        u64 kmax = (hi - 1) / step;
        kmax = std::min(kmax, step - 1);
        for (u64 k = kmin | 1; k <= kmax; k += 2) found.emplace_back(k * step + 1, k, m);
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
    std::vector<std::pair<u64, unsigned>> out;
    out.reserve(found.size());
    for (const auto& [N, k, m] : found) out.emplace_back(k, m);
    return out;
}

// ---------------------------------------------------------------------------
// Ladder

struct Ladder {
    std::vector<u64> primes;
    u64 min_gap = 4;
    u64 max_gap = 0;
    u64 limit = 0;
    u64 proth_rungs = 0;

    /// FNV-1a over (limit, max_gap, primes).
    std::uint64_t hash() const {
        std::uint64_t h = 1469598103934665603ULL;
        auto mix = [&](u64 v) {
            for (int i = 0; i < 8; ++i) {
                h ^= (v >> (8 * i)) & 0xff;
                h *= 1099511628211ULL;
            }
        };
        mix(limit);
        mix(max_gap);
        for (u64 p : primes) mix(p);
        return h;
    }

    /// Throws VerificationFailure on any broken invariant.
    void validate(bool recertify = true) const {
        if (primes.empty() || primes.front() != 3) throw VerificationFailure("ladder: first rung must be 3");
        if (primes.back() < limit) throw VerificationFailure("ladder: last rung below limit");
        for (std::size_t i = 1; i < primes.size(); ++i) {
            if (primes[i] <= primes[i - 1]) throw VerificationFailure("ladder: rungs not increasing");
            const u64 g = primes[i] - primes[i - 1];
            if (g < min_gap || g > max_gap)
                throw VerificationFailure("ladder: gap " + std::to_string(g) + " after " + std::to_string(primes[i - 1]) +
                                          " outside [" + std::to_string(min_gap) + ", " + std::to_string(max_gap) + "]");
        }
        if (recertify)
            for (u64 p : primes)
                if (!is_prime_u64(p)) throw VerificationFailure("ladder: rung " + std::to_string(p) + " not prime");
    }

    /// Index of the rung used for n: the largest p < n, stepping down once
    /// when n − p = 2.
    std::size_t rung_for(u64 n) const {
        auto it = std::lower_bound(primes.begin(), primes.end(), n);
        if (it == primes.begin()) throw DomainError("ladder: n below the first rung");
        std::size_t i = static_cast<std::size_t>(it - primes.begin()) - 1;
        if (n - primes[i] == 2) {
            if (i == 0) throw DomainError("ladder: no rung below n - 2");
            --i;
        }
        return i;
    }
};

/// Rungs from 3 past limit. Each next rung is the largest Proth prime in
/// [p + 4, p + max_gap]; when the window has none, the largest prime there.
inline Ladder build_ladder(u64 limit, u64 max_gap) {
    if (limit < 7) throw DomainError("build_ladder: limit must be at least 7");
    if (max_gap < 4) throw DomainError("build_ladder: max_gap must be at least 4");
    if (limit > (u64{1} << 62)) throw DomainError("build_ladder: limit too large");
    Ladder L;
    L.max_gap = max_gap;
    L.limit = limit;
    L.primes.push_back(3);
    while (L.primes.back() < limit) {
        const u64 cur = L.primes.back();
        const u64 lo = cur + 4, hi = cur + max_gap;
        std::optional<u64> next;
        for (const auto& [k, m] : proth_numbers_in(lo, hi)) {
            const auto cert = proth_test(k, m);
            if (cert.status == ProthStatus::prime) {
                next = cert.N;
                ++L.proth_rungs;
                break;
            }
        }
        if (!next) {
            for (u64 c = hi % 2 == 0 ? hi - 1 : hi; c >= lo; c -= 2)
                if (is_prime_u64(c)) {
                    next = c;
                    break;
                }
        }
        if (!next)
            throw VerificationFailure("build_ladder: no certifiable prime in [" + std::to_string(lo) + ", " +
                                      std::to_string(hi) + "]");
        L.primes.push_back(*next);
    }
    L.validate(false);
    return L;
}

inline constexpr char ladder_magic[8] = {'G', 'B', 'L', 'A', 'D', 'D', 'R', '1'};

/// Header (magic, limit, max_gap, hash, count) followed by the rungs, all
/// little-endian u64.
inline void write_ladder(const Ladder& L, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ResourceError("write_ladder: cannot open " + path.string());
    auto put = [&](u64 v) {
        std::array<unsigned char, 8> b{};
        for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
        os.write(reinterpret_cast<const char*>(b.data()), 8);
    };
    os.write(ladder_magic, 8);
    put(L.limit);
    put(L.max_gap);
    put(L.hash());
    put(L.primes.size());
    for (u64 p : L.primes) put(p);
    if (!os) throw ResourceError("write_ladder: write failed for " + path.string());
}

inline Ladder read_ladder(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DomainError("read_ladder: cannot open " + path.string());
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, ladder_magic, 8) != 0) throw DomainError("read_ladder: bad magic");
    auto get = [&]() {
        std::array<unsigned char, 8> b{};
        is.read(reinterpret_cast<char*>(b.data()), 8);
        if (!is) throw DomainError("read_ladder: truncated file");
        u64 v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<u64>(b[i]) << (8 * i);
        return v;
    };
    Ladder L;
    L.limit = get();
    L.max_gap = get();
    const u64 h = get();
    const u64 count = get();
    require_memory(count * 8, "read_ladder");
    L.primes.resize(count);
    for (auto& p : L.primes) p = get();
    if (L.hash() != h) throw DomainError("read_ladder: hash mismatch");
    L.validate(true);
    return L;
}

// ---------------------------------------------------------------------------
// Ternary witnesses

struct TernaryWitness {
    u64 n = 0;
    u64 p = 0;
    u64 p1 = 0;
    u64 p2 = 0;
};

/// Independent re-validation: exact sum and three Miller–Rabin certificates.
inline bool recertify(const TernaryWitness& w) {
    return w.p + w.p1 + w.p2 == w.n && w.p1 <= w.n && is_prime_u64(w.p) && is_prime_u64(w.p1) && is_prime_u64(w.p2);
}

inline TernaryWitness ternary_verify(u64 n, const Ladder& L) {
    if (n % 2 == 0) throw DomainError("ternary_verify: n must be odd");
    if (n < 7) throw DomainError("ternary_verify: n must be at least 7");
    if (n > L.limit) throw DomainError("ternary_verify: n above ladder limit");
    const u64 p = L.primes[L.rung_for(n)];
    const auto b = binary_check(n - p);
    return {n, p, b.p1, b.p2};
}

namespace detail {

/// Binary checks for even m ≤ table limit by lookup in a sieve.
class BinaryTable {
public:
    explicit BinaryTable(u64 limit) : flags_(prime_flags(limit)), limit_(limit) {}

    u64 limit() const { return limit_; }

    BinaryWitness check(u64 m) const {
        if (m == 4) return {4, 2, 2};
        for (u64 p = 3; p <= m / 2; p += 2)
            if (flags_[p] && flags_[m - p]) return {m, p, m - p};
        throw VerificationFailure("binary_check: no decomposition found for n = " + std::to_string(m));
    }

private:
    std::vector<std::uint8_t> flags_;
    u64 limit_;
};

}  // namespace detail

struct VerifySummary {
    u64 lo = 0;
    u64 hi = 0;
    u64 verified = 0;
    u64 max_binary = 0;   // largest n − p used
    u64 max_p1 = 0;       // largest smaller binary summand
    u64 last_verified = 0;
    std::uint64_t digest = 1469598103934665603ULL;  // in-order FNV-1a over witnesses
    std::uint64_t ladder_hash = 0;
    u64 chunk = 0;
    double seconds = 0.0;  // not part of the deterministic output

    nlohmann::json to_json() const {
        return {{"lo", lo},
                {"hi", hi},
                {"verified", verified},
                {"max_binary", max_binary},
                {"max_p1", max_p1},
                {"last_verified", last_verified},
                {"digest", digest},
                {"ladder_hash", ladder_hash},
                {"chunk", chunk}};
    }

    static VerifySummary from_json(const nlohmann::json& j) {
        VerifySummary s;
        s.lo = j.at("lo").get<u64>();
        s.hi = j.at("hi").get<u64>();
        s.verified = j.at("verified").get<u64>();
        s.max_binary = j.at("max_binary").get<u64>();
        s.max_p1 = j.at("max_p1").get<u64>();
        s.last_verified = j.at("last_verified").get<u64>();
        s.digest = j.at("digest").get<std::uint64_t>();
        s.ladder_hash = j.at("ladder_hash").get<std::uint64_t>();
        s.chunk = j.at("chunk").get<u64>();
        return s;
    }

    double throughput() const { return seconds > 0.0 ? static_cast<double>(verified) / seconds : 0.0; }
};

struct VerifyOptions {
    unsigned workers = detail::default_workers();
    u64 chunk = u64{1} << 20;                          // odd n per chunk
    std::optional<std::filesystem::path> checkpoint;  // JSON, rewritten after every batch
    std::ostream* witnesses = nullptr;                // CSV rows n,p,p1,p2
};

namespace detail {

inline void digest_mix(std::uint64_t& h, u64 v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 1099511628211ULL;
    }
}

inline void write_checkpoint(const std::filesystem::path& path, const VerifySummary& s) {
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream os(tmp);
        if (!os) throw ResourceError("checkpoint: cannot open " + tmp.string());
        os << s.to_json().dump(2) << '\n';
        if (!os) throw ResourceError("checkpoint: write failed");
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace detail

/// Witnesses for every odd n in [lo, hi]. Chunks are verified
/// independently and merged in order, so the summary does not depend on
/// the worker count. With a checkpoint path, progress is saved after each
/// batch and a matching checkpoint is resumed from.
inline VerifySummary verify_range(u64 lo, u64 hi, const Ladder& L, const VerifyOptions& opt = {}) {
    if (lo % 2 == 0 || hi % 2 == 0) throw DomainError("verify_range: bounds must be odd");
    if (lo < 7) throw DomainError("verify_range: lo must be at least 7");
    if (hi < lo) throw DomainError("verify_range: hi below lo");
    if (hi > L.limit) throw DomainError("verify_range: hi above ladder limit");
    if (opt.chunk < 1) throw DomainError("verify_range: chunk must be positive");
    const auto start_time = std::chrono::steady_clock::now();
    const u64 table_limit = std::min<u64>(L.max_gap + 2, hi);
    require_memory(table_limit + 1, "verify_range binary table");
    const detail::BinaryTable table(table_limit);

    VerifySummary s;
    s.lo = lo;
    s.hi = hi;
    s.ladder_hash = L.hash();
    s.chunk = opt.chunk;
    s.last_verified = lo - 2;
    if (opt.checkpoint && std::filesystem::exists(*opt.checkpoint)) {
        std::ifstream is(*opt.checkpoint);
        nlohmann::json j;
        try {
            is >> j;
        } catch (const nlohmann::json::exception& e) {
            throw DomainError(std::string("verify_range: unreadable checkpoint: ") + e.what());
        }
        const auto c = VerifySummary::from_json(j);
        if (c.lo != lo || c.hi != hi || c.ladder_hash != s.ladder_hash || c.chunk != s.chunk)
            throw DomainError("verify_range: checkpoint does not match range, ladder or chunk size");
        s = c;
    }

    struct ChunkResult {
        u64 count = 0, max_binary = 0, max_p1 = 0;
        std::uint64_t digest = 0;
        std::string rows;
        std::optional<u64> failed;
        std::string reason;
    };
    const unsigned workers = std::max(1u, opt.workers);
    // Fixed chunk geometry from lo; resuming starts at the next chunk boundary.
    const u64 total_odd = (hi - lo) / 2 + 1;
    const u64 chunks = (total_odd + opt.chunk - 1) / opt.chunk;
    u64 next_chunk = s.last_verified >= hi ? chunks : (s.last_verified + 2 - lo) / 2 / opt.chunk;
    while (next_chunk < chunks) {
        const u64 batch = std::min<u64>(workers, chunks - next_chunk);
        std::vector<ChunkResult> res(batch);
        detail::parallel_for(batch, workers, [&](std::size_t b) {
            auto& r = res[b];
            const u64 first = lo + 2 * (next_chunk + b) * opt.chunk;
            const u64 last = std::min(hi, first + 2 * (opt.chunk - 1));
            std::uint64_t h = 1469598103934665603ULL;
            std::ostringstream rows;
            for (u64 n = first; n <= last; n += 2) {
                try {
                    const u64 p = L.primes[L.rung_for(n)];
                    const u64 m = n - p;
                    const auto w = m <= table.limit() ? table.check(m) : binary_check(m);
                    if (p + w.p1 + w.p2 != n) throw VerificationFailure("sum identity broken");
                    ++r.count;
                    r.max_binary = std::max(r.max_binary, m);
                    r.max_p1 = std::max(r.max_p1, w.p1);
                    detail::digest_mix(h, p);
                    detail::digest_mix(h, w.p1);
                    if (opt.witnesses) rows << n << ',' << p << ',' << w.p1 << ',' << w.p2 << '\n';
                } catch (const std::exception& e) {
                    r.failed = n;
                    r.reason = e.what();
                    return;
                }
            }
            r.digest = h;
            r.rows = rows.str();
        });
        for (const auto& r : res) {
            if (r.failed)
                throw VerificationFailure("verify_range: failed at n = " + std::to_string(*r.failed) + ": " + r.reason);
            s.verified += r.count;
            s.max_binary = std::max(s.max_binary, r.max_binary);
            s.max_p1 = std::max(s.max_p1, r.max_p1);
            detail::digest_mix(s.digest, r.digest);
            if (opt.witnesses) *opt.witnesses << r.rows;
        }
        next_chunk += batch;
        s.last_verified = std::min(hi, lo + 2 * (next_chunk * opt.chunk - 1));
        if (opt.checkpoint) detail::write_checkpoint(*opt.checkpoint, s);
    }
    s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
    return s;
}

}  // namespace goldbach_lab
