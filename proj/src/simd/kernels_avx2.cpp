#include "attnkern/simd/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <cmath>
#include <immintrin.h>

namespace attnkern::kern::detail {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    __m256d acc3 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
        acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), acc2);
        acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), acc3);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double r = hsum(_mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3)));
    for (; i < n; ++i) r += a[i] * b[i];
    return r;
}

double squared_norm_avx2(const double* a, std::size_t n) { return dot_avx2(a, a, n); }

double sum_avx2(const double* a, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(a + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(a + i + 4));
    }
    for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(a + i));
    double r = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) r += a[i];
    return r;
}

double max_value_avx2(const double* a, std::size_t n) {
    std::size_t i = 0;
    double m = a[0];
    if (n >= 4) {
        __m256d vm = _mm256_loadu_pd(a);
        for (i = 4; i + 4 <= n; i += 4) vm = _mm256_max_pd(vm, _mm256_loadu_pd(a + i));
        __m128d lo = _mm256_castpd256_pd128(vm);
        __m128d hi = _mm256_extractf128_pd(vm, 1);
        lo = _mm_max_pd(lo, hi);
        __m128d swapped = _mm_unpackhi_pd(lo, lo);
        m = _mm_cvtsd_f64(_mm_max_sd(lo, swapped));
    }
    for (; i < n; ++i)
        if (a[i] > m) m = a[i];
    return m;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
        _mm256_storeu_pd(y + i + 4,
                         _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4)));
    }
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale_avx2(double* x, std::size_t n, double c) {
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(vc, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= c;
}

// Cephes-style exp on 4 lanes. Valid for |x| <= 700 (caller guards the rest);
// argument reduction x = n*ln2 + r, rational approximation on r, exponent
// reassembled through the IEEE bit pattern.
inline __m256d exp4(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
    const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);

    __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    x = _mm256_fnmadd_pd(n, c1, x);
    x = _mm256_fnmadd_pd(n, c2, x);

    const __m256d xx = _mm256_mul_pd(x, x);
    __m256d p = _mm256_set1_pd(1.26177193074810590878e-4);
    p = _mm256_fmadd_pd(p, xx, _mm256_set1_pd(3.02994407707441961300e-2));
    p = _mm256_fmadd_pd(p, xx, _mm256_set1_pd(9.99999999999999999910e-1));
    p = _mm256_mul_pd(p, x);
    __m256d q = _mm256_set1_pd(3.00198505138664455042e-6);
    q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.52448340349684104192e-3));
    q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.27265548208155028766e-1));
    q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.00000000000000000005e0));
    __m256d r = _mm256_div_pd(p, _mm256_sub_pd(q, p));
    r = _mm256_fmadd_pd(_mm256_set1_pd(2.0), r, _mm256_set1_pd(1.0));

    const __m128i n32 = _mm256_cvtpd_epi32(n);
    const __m256i n64 = _mm256_cvtepi32_epi64(n32);
    const __m256i pow2 = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    return _mm256_mul_pd(r, _mm256_castsi256_pd(pow2));
}

void exp_shift_avx2(double* dst, const double* src, std::size_t n, double s) {
    const __m256d vs = _mm256_set1_pd(s);
    const __m256d hi = _mm256_set1_pd(700.0);
    const __m256d lo = _mm256_set1_pd(-700.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_add_pd(_mm256_loadu_pd(src + i), vs);
        const __m256d out_of_range =
            _mm256_or_pd(_mm256_cmp_pd(x, hi, _CMP_GT_OQ), _mm256_cmp_pd(x, lo, _CMP_LT_OQ));
        if (_mm256_movemask_pd(out_of_range) != 0) {
            for (std::size_t k = 0; k < 4; ++k) dst[i + k] = std::exp(src[i + k] + s);
        } else {
            _mm256_storeu_pd(dst + i, exp4(x));
        }
    }
    for (; i < n; ++i) dst[i] = std::exp(src[i] + s);
}

} // namespace

extern const KernelTable avx2_table;
const KernelTable avx2_table = {
    dot_avx2,  squared_norm_avx2, sum_avx2,       max_value_avx2,
    axpy_avx2, scale_avx2,        exp_shift_avx2,
};

} // namespace attnkern::kern::detail

#endif // __AVX2__ && __FMA__
