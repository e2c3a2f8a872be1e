// 1D FFT: iterative radix-2 Cooley-Tukey for powers of two, Bluestein's
// chirp-z transform for everything else (feature grids are 65x65 at the
// default configuration, so non-power-of-two sizes are the common case).

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <unordered_map>

#include "trackkit/spectral.hpp"

namespace trackkit::spectral {

namespace {

using cd = std::complex<double>;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

int next_pow2(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft_pow2(cd* a, int n, bool inverse) {
    // Bit-reversal permutation.
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / len;
        const cd wlen(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            cd w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                const cd u = a[i + k];
                const cd v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Precomputed chirp tables for one Bluestein size.
struct BluesteinPlan {
    int n = 0;
    int m = 0;                 // padded power-of-two size >= 2n-1
    std::vector<cd> chirp;     // exp(-i*pi*k^2/n), k in [0, n)
    std::vector<cd> kernel_f;  // FFT of the chirp-conjugate kernel, length m
};

std::shared_ptr<const BluesteinPlan> bluestein_plan(int n) {
    static std::mutex mu;
    static std::unordered_map<int, std::shared_ptr<const BluesteinPlan>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    auto plan = std::make_shared<BluesteinPlan>();
    plan->n = n;
    plan->m = next_pow2(2 * n - 1);
    plan->chirp.resize(n);
    for (int k = 0; k < n; ++k) {
        // k^2 mod 2n keeps the phase argument small for large n.
        const long long k2 = (1LL * k * k) % (2LL * n);
        const double ang = -std::numbers::pi * static_cast<double>(k2) / n;
        plan->chirp[k] = cd(std::cos(ang), std::sin(ang));
    }
    plan->kernel_f.assign(plan->m, cd(0.0, 0.0));
    plan->kernel_f[0] = std::conj(plan->chirp[0]);
    for (int k = 1; k < n; ++k) {
        plan->kernel_f[k] = std::conj(plan->chirp[k]);
        plan->kernel_f[plan->m - k] = std::conj(plan->chirp[k]);
    }
    fft_pow2(plan->kernel_f.data(), plan->m, false);

    cache.emplace(n, plan);
    return plan;
}

void fft_bluestein(cd* a, int n, bool inverse) {
    const auto plan = bluestein_plan(n);
    const int m = plan->m;
    std::vector<cd> buf(m, cd(0.0, 0.0));
    if (inverse) {
        for (int k = 0; k < n; ++k) buf[k] = std::conj(a[k]) * plan->chirp[k];
    } else {
        for (int k = 0; k < n; ++k) buf[k] = a[k] * plan->chirp[k];
    }
    fft_pow2(buf.data(), m, false);
    for (int k = 0; k < m; ++k) buf[k] *= plan->kernel_f[k];
    fft_pow2(buf.data(), m, true);
    const double inv_m = 1.0 / m;
    if (inverse) {
        for (int k = 0; k < n; ++k)
            a[k] = std::conj(buf[k] * plan->chirp[k] * inv_m);
    } else {
        for (int k = 0; k < n; ++k) a[k] = buf[k] * plan->chirp[k] * inv_m;
    }
}

}  // namespace

void fft_1d(cd* data, int n, bool inverse) {
    if (n == 1) return;
    if (is_pow2(n))
        fft_pow2(data, n, inverse);
    else
        fft_bluestein(data, n, inverse);
}

}  // namespace trackkit::spectral
