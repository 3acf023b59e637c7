// Compiled with -mavx2 -mfma. Only reached through avx2_table(), which
// checks CPUID before handing the table out.

#include <immintrin.h>

#include "voltlab/kernels.hpp"

namespace voltlab::kernels {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double sum_avx2(const double* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
    }
    for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += x[i];
    return s;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_sq_dev_avx2(const double* x, std::size_t n, double mean) {
    const __m256d m = _mm256_set1_pd(mean);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), m);
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double d = x[i] - mean;
        s += d * d;
    }
    return s;
}

Moments central_moments_avx2(const double* x, std::size_t n, double mean) {
    const __m256d m = _mm256_set1_pd(mean);
    __m256d a2 = _mm256_setzero_pd();
    __m256d a3 = _mm256_setzero_pd();
    __m256d a4 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), m);
        __m256d d2 = _mm256_mul_pd(d, d);
        a2 = _mm256_add_pd(a2, d2);
        a3 = _mm256_fmadd_pd(d2, d, a3);
        a4 = _mm256_fmadd_pd(d2, d2, a4);
    }
    Moments out{hsum(a2), hsum(a3), hsum(a4)};
    for (; i < n; ++i) {
        const double d = x[i] - mean;
        const double d2 = d * d;
        out.m2 += d2;
        out.m3 += d2 * d;
        out.m4 += d2 * d2;
    }
    return out;
}

double lagged_cross_avx2(const double* x, std::size_t n, std::size_t lag, double mean) {
    if (lag >= n) return 0.0;
    const std::size_t len = n - lag;
    const __m256d m = _mm256_set1_pd(mean);
    __m256d acc = _mm256_setzero_pd();
    std::size_t t = 0;
    for (; t + 4 <= len; t += 4) {
        __m256d a = _mm256_sub_pd(_mm256_loadu_pd(x + t), m);
        __m256d b = _mm256_sub_pd(_mm256_loadu_pd(x + t + lag), m);
        acc = _mm256_fmadd_pd(a, b, acc);
    }
    double s = hsum(acc);
    for (; t < len; ++t) s += (x[t] - mean) * (x[t + lag] - mean);
    return s;
}

double sq_ratio_sum_avx2(const double* e, const double* s2, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d ev = _mm256_loadu_pd(e + i);
        __m256d q = _mm256_div_pd(_mm256_mul_pd(ev, ev), _mm256_loadu_pd(s2 + i));
        acc = _mm256_add_pd(acc, q);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += e[i] * e[i] / s2[i];
    return s;
}

}  // namespace

const KernelTable& avx2_table_unchecked() noexcept {
    static const KernelTable table{
        Isa::avx2,         "avx2",           sum_avx2,          dot_avx2,
        sum_sq_dev_avx2,   central_moments_avx2, lagged_cross_avx2, sq_ratio_sum_avx2,
    };
    return table;
}

}  // namespace voltlab::kernels
