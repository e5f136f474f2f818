// Compiled with -mavx2 (no -mfma); only reached after a cpuid check.
#include "coflow/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace coflow::kernels::avx2 {

void axpy_sub(double a, const double* x, double* y, std::size_t n) noexcept {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d y0 = _mm256_loadu_pd(y + i);
        __m256d y1 = _mm256_loadu_pd(y + i + 4);
        const __m256d p0 = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
        const __m256d p1 = _mm256_mul_pd(va, _mm256_loadu_pd(x + i + 4));
        _mm256_storeu_pd(y + i, _mm256_sub_pd(y0, p0));
        _mm256_storeu_pd(y + i + 4, _mm256_sub_pd(y1, p1));
    }
    for (; i + 4 <= n; i += 4) {
        const __m256d p = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(y + i, _mm256_sub_pd(_mm256_loadu_pd(y + i), p));
    }
    for (; i < n; ++i) {
        const double prod = a * x[i];
        y[i] = y[i] - prod;
    }
}

double dot(const double* x, const double* y, std::size_t n) noexcept {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        acc = _mm256_add_pd(acc, p);
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    for (std::size_t l = 0; i < n; ++i, ++l) {
        const double prod = x[i] * y[i];
        lane[l] = lane[l] + prod;
    }
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

void scale(double a, double* x, std::size_t n) noexcept {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), va));
    }
    for (; i < n; ++i) x[i] *= a;
}

double max_abs(const double* x, std::size_t n) noexcept {
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        m = _mm256_max_pd(m, _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i)));
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, m);
    double best = lane[0];
    for (int l = 1; l < 4; ++l) {
        if (lane[l] > best) best = lane[l];
    }
    for (; i < n; ++i) {
        const double v = std::fabs(x[i]);
        if (v > best) best = v;
    }
    return best;
}

}  // namespace coflow::kernels::avx2
