#pragma once

#include <cstddef>

namespace trackkit::simd {

enum class Backend { scalar, avx2, neon };

/// Backend chosen at startup from CPU capabilities (override with the
/// TRACKKIT_BACKEND environment variable: "scalar", "avx2" or "neon").
Backend active_backend();

/// Force a backend, mainly for equivalence tests. Throws ConfigError if the
/// requested backend is not available on this machine.
void force_backend(Backend b);

const char* backend_name(Backend b);

/// Inner product with float accumulation.
float dot(const float* a, const float* b, std::size_t n);

/// Inner product with double accumulation; use where long sums must stay
/// accurate (correlation responses, norms over large grids).
double dot_wide(const float* a, const float* b, std::size_t n);

/// y += alpha * x
void axpy(float alpha, const float* x, float* y, std::size_t n);

/// x *= alpha
void scale(float* x, float alpha, std::size_t n);

float sum(const float* x, std::size_t n);

/// Sum of squares with double accumulation.
double sumsq_wide(const float* x, std::size_t n);

namespace detail {

struct KernelTable {
    float (*dot)(const float*, const float*, std::size_t);
    double (*dot_wide)(const float*, const float*, std::size_t);
    void (*axpy)(float, const float*, float*, std::size_t);
    void (*scale)(float*, float, std::size_t);
    float (*sum)(const float*, std::size_t);
    double (*sumsq_wide)(const float*, std::size_t);
};

// Each backend translation unit returns its table, or nullptr when the
// backend is not compiled in or not supported by the running CPU.
const KernelTable* scalar_table();
const KernelTable* avx2_table();
const KernelTable* neon_table();

}  // namespace detail

}  // namespace trackkit::simd
