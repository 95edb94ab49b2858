#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace attnkern::kern {

// Dispatch table for the hot inner loops. Every entry has a scalar
// reference implementation and may have SIMD variants; the active table is
// chosen once at startup from CPU capabilities and can be overridden for
// equivalence testing.
struct KernelTable {
    double (*dot)(const double*, const double*, std::size_t);
    double (*squared_norm)(const double*, std::size_t);
    double (*sum)(const double*, std::size_t);
    double (*max_value)(const double*, std::size_t); // n >= 1, finite entries
    void (*axpy)(double, const double*, double*, std::size_t); // y += a*x
    void (*scale)(double*, std::size_t, double);
    void (*exp_shift)(double*, const double*, std::size_t, double); // dst = exp(src + s)
};

enum class Backend { scalar, avx2 };

const char* backend_name(Backend b);
std::vector<Backend> available_backends();
Backend active_backend();

// Table lookup for loop-hoisted use in hot code.
const KernelTable& table();
const KernelTable& table_for(Backend b);

// Test hooks: pin the dispatch to one backend / restore auto-detection.
void force_backend(Backend b);
void reset_backend();

inline double dot(const double* a, const double* b, std::size_t n) { return table().dot(a, b, n); }
inline double squared_norm(const double* a, std::size_t n) { return table().squared_norm(a, n); }
inline double sum(const double* a, std::size_t n) { return table().sum(a, n); }
inline double max_value(const double* a, std::size_t n) { return table().max_value(a, n); }
inline void axpy(double alpha, const double* x, double* y, std::size_t n) { table().axpy(alpha, x, y, n); }
inline void scale(double* x, std::size_t n, double c) { table().scale(x, n, c); }
inline void exp_shift(double* dst, const double* src, std::size_t n, double s) { table().exp_shift(dst, src, n, s); }

} // namespace attnkern::kern
