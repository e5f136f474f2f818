#pragma once
// Dense double-precision kernels used by the simplex solver.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant selected at runtime. The variants are bit-identical: neither uses
// fused multiply-add, and reductions use the same four-lane partial-sum order.

#include <cstddef>
#include <span>
#include <string_view>

namespace coflow::kernels {

enum class Backend { kScalar, kAvx2 };

/// Best backend the running CPU supports.
Backend detect_backend() noexcept;

/// Backend used by the dispatching entry points below. Initialised from
/// detect_backend(), overridable through COFLOW_SIMD=scalar|avx2.
Backend active_backend() noexcept;

/// Forces a backend. Requests for an unsupported backend fall back to scalar.
/// Returns the backend actually selected.
Backend set_backend(Backend backend) noexcept;

std::string_view backend_name(Backend backend) noexcept;
bool backend_supported(Backend backend) noexcept;

// y[i] -= a * x[i]
void axpy_sub(double a, std::span<const double> x, std::span<double> y) noexcept;
// sum x[i] * y[i], four interleaved partial sums combined as (s0 + s1) + (s2 + s3)
double dot(std::span<const double> x, std::span<const double> y) noexcept;
// x[i] *= a
void scale(double a, std::span<double> x) noexcept;
// max |x[i]|, 0 for empty input
double max_abs(std::span<const double> x) noexcept;

namespace scalar {
void axpy_sub(double a, const double* x, double* y, std::size_t n) noexcept;
double dot(const double* x, const double* y, std::size_t n) noexcept;
void scale(double a, double* x, std::size_t n) noexcept;
double max_abs(const double* x, std::size_t n) noexcept;
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define COFLOW_HAVE_AVX2_KERNELS 1
namespace avx2 {
void axpy_sub(double a, const double* x, double* y, std::size_t n) noexcept;
double dot(const double* x, const double* y, std::size_t n) noexcept;
void scale(double a, double* x, std::size_t n) noexcept;
double max_abs(const double* x, std::size_t n) noexcept;
}  // namespace avx2
#else
#define COFLOW_HAVE_AVX2_KERNELS 0
#endif

}  // namespace coflow::kernels
