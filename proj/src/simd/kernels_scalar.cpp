#include "attnkern/simd/kernels.hpp"

#include <cmath>

// Scalar reference kernels. These are the semantics every SIMD variant is
// equivalence-tested against.

namespace attnkern::kern::detail {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double squared_norm_scalar(const double* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * a[i];
    return acc;
}

double sum_scalar(const double* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i];
    return acc;
}

double max_value_scalar(const double* a, std::size_t n) {
    double m = a[0];
    for (std::size_t i = 1; i < n; ++i)
        if (a[i] > m) m = a[i];
    return m;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_scalar(double* x, std::size_t n, double c) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= c;
}

void exp_shift_scalar(double* dst, const double* src, std::size_t n, double s) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = std::exp(src[i] + s);
}

} // namespace

extern const KernelTable scalar_table;
const KernelTable scalar_table = {
    dot_scalar,     squared_norm_scalar, sum_scalar,      max_value_scalar,
    axpy_scalar,    scale_scalar,        exp_shift_scalar,
};

} // namespace attnkern::kern::detail
