#include "coflow/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace coflow::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if COFLOW_HAVE_AVX2_KERNELS && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

Backend initial_backend() noexcept {
    Backend chosen = detect_backend();
    if (const char* env = std::getenv("COFLOW_SIMD")) {
        const std::string v(env);
        if (v == "scalar") chosen = Backend::kScalar;
        if (v == "avx2" && backend_supported(Backend::kAvx2)) chosen = Backend::kAvx2;
    }
    return chosen;
}

std::atomic<Backend>& current() noexcept {
    static std::atomic<Backend> backend{initial_backend()};
    return backend;
}

}  // namespace

Backend detect_backend() noexcept {
    return cpu_has_avx2() ? Backend::kAvx2 : Backend::kScalar;
}

bool backend_supported(Backend backend) noexcept {
    return backend == Backend::kScalar || cpu_has_avx2();
}

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

Backend set_backend(Backend backend) noexcept {
    if (!backend_supported(backend)) backend = Backend::kScalar;
    current().store(backend, std::memory_order_relaxed);
    return backend;
}

std::string_view backend_name(Backend backend) noexcept {
    switch (backend) {
        case Backend::kScalar: return "scalar";
        case Backend::kAvx2: return "avx2";
    }
    return "unknown";
}

void axpy_sub(double a, std::span<const double> x, std::span<double> y) noexcept {
#if COFLOW_HAVE_AVX2_KERNELS
    if (active_backend() == Backend::kAvx2) {
        avx2::axpy_sub(a, x.data(), y.data(), y.size());
        return;
    }
#endif
    scalar::axpy_sub(a, x.data(), y.data(), y.size());
}

double dot(std::span<const double> x, std::span<const double> y) noexcept {
#if COFLOW_HAVE_AVX2_KERNELS
    if (active_backend() == Backend::kAvx2) return avx2::dot(x.data(), y.data(), x.size());
#endif
    return scalar::dot(x.data(), y.data(), x.size());
}

void scale(double a, std::span<double> x) noexcept {
#if COFLOW_HAVE_AVX2_KERNELS
    if (active_backend() == Backend::kAvx2) {
        avx2::scale(a, x.data(), x.size());
        return;
    }
#endif
    scalar::scale(a, x.data(), x.size());
}

double max_abs(std::span<const double> x) noexcept {
#if COFLOW_HAVE_AVX2_KERNELS
    if (active_backend() == Backend::kAvx2) return avx2::max_abs(x.data(), x.size());
#endif
    return scalar::max_abs(x.data(), x.size());
}

}  // namespace coflow::kernels
