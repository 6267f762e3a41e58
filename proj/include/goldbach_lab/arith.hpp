#pragma once

// Integer arithmetic shared by every other module: 64-bit modular
// arithmetic, deterministic primality, sieving and the classical
// multiplicative functions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <utility>
#include <vector>

#include "budget.hpp"
#include "errors.hpp"

namespace goldbach_lab {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

namespace detail {

inline bool mr_witness_passes(u64 n, u64 a, u64 d, int r) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < r; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace detail

/// Deterministic for every 64-bit n: Miller-Rabin with the first twelve prime
/// bases, which is proven correct below 3.3e24.
inline bool is_prime_u64(u64 n) {
    static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n < 2) return false;
    for (u64 p : small) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n < 41 * 41) return true;
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (u64 a : small)
        if (!detail::mr_witness_passes(n, a, d, r)) return false;
    return true;
}

/// Jacobi symbol (a/n) for odd n > 0.
inline int jacobi(u64 a, u64 n) {
    if (n == 0 || (n & 1) == 0) throw DomainError("jacobi: modulus must be odd and positive");
    a %= n;
    int result = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            const u64 r = n & 7;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

/// Byte sieve: flags[k] != 0 iff k is prime, for 0 <= k <= n.
inline std::vector<std::uint8_t> prime_flags(u64 n) {
    require_memory(n + 1, "prime flag sieve");
    std::vector<std::uint8_t> flags(n + 1, 1);
    flags[0] = 0;
    if (n >= 1) flags[1] = 0;
    for (u64 i = 2; i * i <= n; ++i)
        if (flags[i])
            for (u64 j = i * i; j <= n; j += i) flags[j] = 0;
    return flags;
}

inline std::vector<u64> primes_upto(u64 n) {
    std::vector<u64> out;
    if (n < 2) return out;
    const auto flags = prime_flags(n);
    for (u64 k = 2; k <= n; ++k)
        if (flags[k]) out.push_back(k);
    return out;
}

struct PrimeTable {
    u64 lo = 0;
    u64 hi = 0;
    std::vector<u64> primes;
};

/// Segmented sieve of Eratosthenes over [lo, hi]. Segments are independent,
/// so a range can be split and the pieces concatenated.
inline PrimeTable sieve_range(u64 lo, u64 hi) {
    if (lo < 2 || lo > hi) throw DomainError("sieve_range: need 2 <= lo <= hi");
    const u64 span = hi - lo + 1;
    const double density = 1.0 / std::max(1.0, std::log(static_cast<double>(std::max<u64>(lo, 3))) - 1.1);
    require_memory(static_cast<u64>(static_cast<double>(span) * density * sizeof(u64) * 1.25) + (1u << 20),
                   "sieve_range output");

    PrimeTable table{lo, hi, {}};
    const u64 root = static_cast<u64>(std::sqrt(static_cast<long double>(hi))) + 1;
    const auto base = primes_upto(root);

    constexpr u64 segment = 1u << 18;
    std::vector<std::uint8_t> seg(segment);
    for (u64 start = lo; start <= hi; start += segment) {
        const u64 end = std::min(hi, start + segment - 1);
        std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(end - start + 1), 1);
        for (u64 p : base) {
            if (p * p > end) break;
            u64 first = std::max(p * p, (start + p - 1) / p * p);
            for (u64 j = first; j <= end; j += p) seg[j - start] = 0;
        }
        for (u64 k = start; k <= end; ++k)
            if (seg[k - start]) table.primes.push_back(k);
        if (end == hi) break;
    }
    return table;
}

/// Trial-division factorization, (prime, exponent) pairs in increasing order.
inline std::vector<std::pair<u64, int>> factorize(u64 n) {
    std::vector<std::pair<u64, int>> out;
    if (n < 2) return out;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

/// von Mangoldt: log p if n = p^k, else 0.
inline double mangoldt(u64 n) {
    if (n < 2) return 0.0;
    const auto f = factorize(n);
    return f.size() == 1 ? std::log(static_cast<double>(f.front().first)) : 0.0;
}

inline int moebius(u64 n) {
    if (n == 0) throw DomainError("moebius: n must be positive");
    int mu = 1;
    for (const auto& [p, e] : factorize(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

inline u64 totient(u64 n) {
    if (n == 0) throw DomainError("totient: n must be positive");
    u64 phi = n;
    for (const auto& [p, e] : factorize(n)) phi = phi / p * (p - 1);
    return phi;
}

inline std::vector<u64> divisors(u64 n) {
    std::vector<u64> out{1};
    for (const auto& [p, e] : factorize(n)) {
        const std::size_t base = out.size();
        u64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Möbius values 0..n by a linear sieve.
inline std::vector<std::int8_t> moebius_table(u64 n) {
    require_memory(n * 5 + 1, "moebius table");
    std::vector<std::int8_t> mu(n + 1, 1);
    std::vector<u64> primes;
    std::vector<std::uint8_t> composite(n + 1, 0);
    mu[0] = 0;
    for (u64 i = 2; i <= n; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            mu[i] = -1;
        }
        for (u64 p : primes) {
            if (i * p > n) break;
            composite[i * p] = 1;
            if (i % p == 0) {
                mu[i * p] = 0;
                break;
            }
            mu[i * p] = static_cast<std::int8_t>(-mu[i]);
        }
    }
    return mu;
}

/// Prime powers n <= limit with Λ(n), ascending.
struct PrimePowers {
    u64 limit = 0;
    std::vector<u64> n;
    std::vector<double> lambda;
};

inline PrimePowers build_prime_powers(u64 limit) {
    PrimePowers pp;
    pp.limit = limit;
    if (limit < 2) return pp;
    const auto primes = sieve_range(2, limit).primes;
    std::vector<std::pair<u64, double>> items;
    items.reserve(primes.size() + primes.size() / 8);
    for (u64 p : primes) {
        const double lp = std::log(static_cast<double>(p));
        for (u64 q = p;; q *= p) {
            items.emplace_back(q, lp);
            if (q > limit / p) break;
        }
    }
    std::sort(items.begin(), items.end());
    pp.n.reserve(items.size());
    pp.lambda.reserve(items.size());
    for (const auto& [n, l] : items) {
        pp.n.push_back(n);
        pp.lambda.push_back(l);
    }
    return pp;
}

/// Process-wide cache of the largest prime-power table built so far.
inline std::shared_ptr<const PrimePowers> prime_powers_upto(u64 limit) {
    static std::mutex mutex;
    static std::shared_ptr<const PrimePowers> cached;
    std::lock_guard<std::mutex> lock(mutex);
    if (!cached || cached->limit < limit) {
        const u64 build = cached ? std::max(limit, cached->limit + cached->limit / 2) : limit;
        cached = std::make_shared<const PrimePowers>(build_prime_powers(std::max<u64>(build, 2)));
    }
    return cached;
}

}  // namespace goldbach_lab
