// NEON kernels for aarch64. NEON is mandatory on aarch64, so no runtime probe
// beyond the architecture check is needed.

#include "trackkit/simd.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace trackkit::simd::detail {

namespace {

float dot_neon(const float* a, const float* b, std::size_t n) {
    float32x4_t acc = vdupq_n_f32(0.0f);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = vfmaq_f32(acc, vld1q_f32(a + i), vld1q_f32(b + i));
    float s = vaddvq_f32(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double dot_wide_neon(const float* a, const float* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        float32x4_t av = vld1q_f32(a + i);
        float32x4_t bv = vld1q_f32(b + i);
        acc0 = vfmaq_f64(acc0, vcvt_f64_f32(vget_low_f32(av)), vcvt_f64_f32(vget_low_f32(bv)));
        acc1 = vfmaq_f64(acc1, vcvt_high_f64_f32(av), vcvt_high_f64_f32(bv));
    }
    double s = vaddvq_f64(acc0) + vaddvq_f64(acc1);
    for (; i < n; ++i)
        s += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    return s;
}

void axpy_neon(float alpha, const float* x, float* y, std::size_t n) {
    const float32x4_t av = vdupq_n_f32(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        vst1q_f32(y + i, vfmaq_f32(vld1q_f32(y + i), av, vld1q_f32(x + i)));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale_neon(float* x, float alpha, std::size_t n) {
    const float32x4_t av = vdupq_n_f32(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        vst1q_f32(x + i, vmulq_f32(vld1q_f32(x + i), av));
    for (; i < n; ++i) x[i] *= alpha;
}

float sum_neon(const float* x, std::size_t n) {
    float32x4_t acc = vdupq_n_f32(0.0f);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = vaddq_f32(acc, vld1q_f32(x + i));
    float s = vaddvq_f32(acc);
    for (; i < n; ++i) s += x[i];
    return s;
}

double sumsq_wide_neon(const float* x, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        float32x4_t xv = vld1q_f32(x + i);
        float64x2_t lo = vcvt_f64_f32(vget_low_f32(xv));
        float64x2_t hi = vcvt_high_f64_f32(xv);
        acc0 = vfmaq_f64(acc0, lo, lo);
        acc1 = vfmaq_f64(acc1, hi, hi);
    }
    double s = vaddvq_f64(acc0) + vaddvq_f64(acc1);
    for (; i < n; ++i)
        s += static_cast<double>(x[i]) * static_cast<double>(x[i]);
    return s;
}

const KernelTable table = {
    dot_neon, dot_wide_neon, axpy_neon,
    scale_neon, sum_neon, sumsq_wide_neon,
};

}  // namespace

const KernelTable* neon_table() { return &table; }

}  // namespace trackkit::simd::detail

#else

namespace trackkit::simd::detail {
const KernelTable* neon_table() { return nullptr; }
}  // namespace trackkit::simd::detail

#endif
