#include "trackkit/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "trackkit/error.hpp"

namespace trackkit::simd {

namespace {

struct Dispatch {
    const detail::KernelTable* table;
    Backend backend;
};

Dispatch pick_default() {
    if (const char* env = std::getenv("TRACKKIT_BACKEND")) {
        if (std::strcmp(env, "scalar") == 0) return {detail::scalar_table(), Backend::scalar};
        if (std::strcmp(env, "avx2") == 0 && detail::avx2_table())
            return {detail::avx2_table(), Backend::avx2};
        if (std::strcmp(env, "neon") == 0 && detail::neon_table())
            return {detail::neon_table(), Backend::neon};
        // Unknown or unsupported request falls through to auto-detection.
    }
    if (const auto* t = detail::avx2_table()) return {t, Backend::avx2};
    if (const auto* t = detail::neon_table()) return {t, Backend::neon};
    return {detail::scalar_table(), Backend::scalar};
}

std::atomic<const detail::KernelTable*> g_table{nullptr};
std::atomic<Backend> g_backend{Backend::scalar};

const detail::KernelTable* table() {
    const detail::KernelTable* t = g_table.load(std::memory_order_acquire);
    if (!t) {
        Dispatch d = pick_default();
        g_backend.store(d.backend, std::memory_order_relaxed);
        g_table.store(d.table, std::memory_order_release);
        t = d.table;
    }
    return t;
}

}  // namespace

Backend active_backend() {
    table();
    return g_backend.load(std::memory_order_relaxed);
}

void force_backend(Backend b) {
    const detail::KernelTable* t = nullptr;
    switch (b) {
        case Backend::scalar: t = detail::scalar_table(); break;
        case Backend::avx2: t = detail::avx2_table(); break;
        case Backend::neon: t = detail::neon_table(); break;
    }
    if (!t) throw ConfigError("requested SIMD backend is not available on this CPU");
    g_backend.store(b, std::memory_order_relaxed);
    g_table.store(t, std::memory_order_release);
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "?";
}

float dot(const float* a, const float* b, std::size_t n) { return table()->dot(a, b, n); }
double dot_wide(const float* a, const float* b, std::size_t n) { return table()->dot_wide(a, b, n); }
void axpy(float alpha, const float* x, float* y, std::size_t n) { table()->axpy(alpha, x, y, n); }
void scale(float* x, float alpha, std::size_t n) { table()->scale(x, alpha, n); }
float sum(const float* x, std::size_t n) { return table()->sum(x, n); }
double sumsq_wide(const float* x, std::size_t n) { return table()->sumsq_wide(x, n); }

}  // namespace trackkit::simd
