// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include "hadfrac/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace hadfrac::kernels::avx2 {

namespace {

inline double hsum(__m256d v) noexcept
{
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) noexcept
{
    // Two independent accumulators hide the FMA latency.
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    if (i + 4 <= n) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        i += 4;
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s = std::fma(a[i], b[i], s);
    return s;
}

double abs_diff_sum(const double* a, const double* b, std::size_t n) noexcept
{
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign_mask, d));
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += std::abs(a[i] - b[i]);
    return s;
}

}  // namespace hadfrac::kernels::avx2
