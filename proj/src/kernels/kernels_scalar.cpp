#include "coflow/kernels.hpp"

#include <cmath>

namespace coflow::kernels::scalar {

void axpy_sub(double a, const double* x, double* y, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) {
        const double prod = a * x[i];
        y[i] = y[i] - prod;
    }
}

double dot(const double* x, const double* y, std::size_t n) noexcept {
    // Lane order mirrors one 256-bit accumulator.
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        for (std::size_t l = 0; l < 4; ++l) {
            const double prod = x[i + l] * y[i + l];
            lane[l] = lane[l] + prod;
        }
    }
    for (std::size_t l = 0; i < n; ++i, ++l) {
        const double prod = x[i] * y[i];
        lane[l] = lane[l] + prod;
    }
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

void scale(double a, double* x, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

double max_abs(const double* x, std::size_t n) noexcept {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = std::fabs(x[i]);
        if (v > m) m = v;
    }
    return m;
}

}  // namespace coflow::kernels::scalar
