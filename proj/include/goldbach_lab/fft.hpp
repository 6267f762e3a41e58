#pragma once

// Discrete Fourier transforms. Complex and real transforms go through FFTW;
// exact integer convolution uses a two-prime number-theoretic transform
// with CRT reconstruction.

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <mutex>
#include <vector>

#include "arith.hpp"
#include "budget.hpp"
#include "errors.hpp"

namespace goldbach_lab {

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

namespace detail {

inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace detail

/// In-place complex DFT. sign = -1 computes Σ_j a_j e(−jk/N); sign = +1 the
/// unnormalized inverse.
inline void dft_inplace(std::vector<std::complex<double>>& data, int sign) {
    if (data.empty()) return;
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()), ptr, ptr, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                FFTW_ESTIMATE);
    }
    if (!plan) throw ResourceError("dft_inplace: FFTW plan creation failed");
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan);
}

/// Real-input DFT: returns Y_k = Σ_r in_r e(−rk/N) for k = 0..N/2.
inline std::vector<std::complex<double>> rfft(std::vector<double>& in) {
    const std::size_t N = in.size();
    std::vector<std::complex<double>> out(N / 2 + 1);
    if (N == 0) return out;
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(N), in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                    FFTW_ESTIMATE);
    }
    if (!plan) throw ResourceError("rfft: FFTW plan creation failed");
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan);
    return out;
}

/// Inverse of rfft (unnormalized): out_r = Σ_k Y_k e(rk/N) over the full
/// Hermitian spectrum.
inline std::vector<double> irfft(std::vector<std::complex<double>>& spectrum, std::size_t N) {
    std::vector<double> out(N);
    if (N == 0) return out;
    if (spectrum.size() != N / 2 + 1) throw DomainError("irfft: spectrum length must be N/2 + 1");
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
        plan = fftw_plan_dft_c2r_1d(static_cast<int>(N), reinterpret_cast<fftw_complex*>(spectrum.data()), out.data(),
                                    FFTW_ESTIMATE);
    }
    if (!plan) throw ResourceError("irfft: FFTW plan creation failed");
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan);
    return out;
}

/// In-place real DFT. `buf` holds N reals on entry and is padded to N + 2;
/// on return it holds the N/2 + 1 complex outputs Y_k (see rfft).
class HalfSpectrum {
public:
    explicit HalfSpectrum(std::vector<double>&& real_input) : N_(real_input.size()), buf_(std::move(real_input)) {
        buf_.resize(2 * (N_ / 2 + 1));
        if (N_ == 0) return;
        auto* out = reinterpret_cast<fftw_complex*>(buf_.data());
        fftw_plan plan;
        {
            std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
            plan = fftw_plan_dft_r2c_1d(static_cast<int>(N_), buf_.data(), out, FFTW_ESTIMATE);
        }
        if (!plan) throw ResourceError("HalfSpectrum: FFTW plan creation failed");
        fftw_execute(plan);
        std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }

    std::size_t size() const { return N_; }

    /// Y_k for 0 ≤ k ≤ N/2.
    std::complex<double> half(std::size_t k) const { return {buf_[2 * k], buf_[2 * k + 1]}; }

    /// Σ_r in_r e(+rj/N) for any j mod N.
    std::complex<double> positive(std::size_t j) const {
        j %= N_;
        return j <= N_ / 2 ? std::conj(half(j)) : half(N_ - j);
    }

private:
    std::size_t N_;
    std::vector<double> buf_;
};

/// Linear convolution a∗b∗c of real sequences, returning indices 0..upto.
/// The transform length exceeds the full linear support, so no wraparound.
inline std::vector<double> convolve3_real(const std::vector<double>& a, const std::vector<double>& b,
                                          const std::vector<double>& c, std::size_t upto) {
    const std::size_t support = a.size() + b.size() + c.size();
    const std::size_t N = next_pow2(support + 1);
    require_memory(N * sizeof(double) * 3, "convolve3_real");
    auto forward = [N](const std::vector<double>& v) {
        std::vector<double> d(N, 0.0);
        std::copy(v.begin(), v.end(), d.begin());
        return HalfSpectrum(std::move(d));
    };
    std::vector<std::complex<double>> prod(N / 2 + 1);
    {
        const auto A = forward(a);
        for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = A.half(k);
    }
    {
        const auto B = forward(b);
        for (std::size_t k = 0; k < prod.size(); ++k) prod[k] *= B.half(k);
    }
    {
        const auto C = forward(c);
        for (std::size_t k = 0; k < prod.size(); ++k) prod[k] *= C.half(k);
    }
    auto full = irfft(prod, N);
    std::vector<double> out(std::min(upto + 1, N));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = full[i] / static_cast<double>(N);
    return out;
}

namespace detail {

struct NttPrime {
    std::uint32_t mod;
    std::uint32_t root;  // primitive root
};

inline constexpr NttPrime ntt_primes[2] = {{2013265921u, 31u}, {469762049u, 3u}};

inline void ntt(std::vector<std::uint32_t>& a, const NttPrime& P, bool invert) {
    const std::size_t n = a.size();
    const u64 mod = P.mod;
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        u64 w = powmod(P.root, (mod - 1) / len, mod);
        if (invert) w = powmod(w, mod - 2, mod);
        std::vector<std::uint32_t> tw(len / 2);
        tw[0] = 1;
        for (std::size_t k = 1; k < len / 2; ++k) tw[k] = static_cast<std::uint32_t>(tw[k - 1] * w % mod);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const u64 u = a[i + k];
                const u64 v = a[i + k + len / 2] * static_cast<u64>(tw[k]) % mod;
                a[i + k] = static_cast<std::uint32_t>(u + v >= mod ? u + v - mod : u + v);
                a[i + k + len / 2] = static_cast<std::uint32_t>(u >= v ? u - v : u + mod - v);
            }
        }
    }
    if (invert) {
        const u64 inv_n = powmod(n % mod, mod - 2, mod);
        for (auto& x : a) x = static_cast<std::uint32_t>(x * inv_n % mod);
    }
}

}  // namespace detail

/// Exact (ind ∗ ind ∗ ind)[m] for m = 0..upto, where ind is a 0/1 sequence.
/// Values are reconstructed from two NTT primes and must stay below their
/// product (≈ 9.5e17), which holds for every length accepted here.
inline std::vector<u64> cube_counts_exact(const std::vector<std::uint8_t>& ind, std::size_t upto) {
    const std::size_t N = next_pow2(3 * ind.size() + 1);
    if (N > (std::size_t{1} << 26)) throw ResourceError("cube_counts_exact: transform length above 2^26");
    require_memory(N * sizeof(std::uint32_t) + (upto + 1) * 3 * sizeof(u64), "cube_counts_exact");
    const std::size_t keep = std::min(upto + 1, N);
    std::vector<std::uint32_t> residue[2];
    for (int k = 0; k < 2; ++k) {
        const auto& P = detail::ntt_primes[k];
        std::vector<std::uint32_t> a(N, 0);
        for (std::size_t i = 0; i < ind.size(); ++i) a[i] = ind[i] ? 1u : 0u;
        detail::ntt(a, P, false);
        for (auto& v : a) {
            const u64 s = static_cast<u64>(v) * v % P.mod;
            v = static_cast<std::uint32_t>(s * v % P.mod);
        }
        detail::ntt(a, P, true);
        a.resize(keep);
        residue[k] = std::move(a);
    }
    // CRT: x ≡ r0 (mod m0), x ≡ r1 (mod m1).
    const u64 m0 = detail::ntt_primes[0].mod, m1 = detail::ntt_primes[1].mod;
    const u64 inv_m0_mod_m1 = powmod(m0 % m1, m1 - 2, m1);
    std::vector<u64> out(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        const u64 r0 = residue[0][i], r1 = residue[1][i];
        const u64 t = (r1 + m1 - r0 % m1) % m1 * inv_m0_mod_m1 % m1;
        out[i] = r0 + t * m0;
    }
    return out;
}

}  // namespace goldbach_lab
