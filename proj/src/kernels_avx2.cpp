// AVX2/FMA variants of the batch kernels. This translation unit is compiled
// with -mavx2 -mfma; callers reach it only through the runtime dispatch in
// kernels.cpp after a CPU capability check.

#include "slantsurf/kernels.hpp"

#if defined(__x86_64__)

#include <immintrin.h>

#include <cmath>

namespace slantsurf::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_max_sd(lo, sh));
}

}  // namespace

double sum(std::span<const double> x) {
    const std::size_t n = x.size();
    const double* p = x.data();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(p + i));
    double s = hsum(acc);
    for (; i < n; ++i) s += p[i];
    return s;
}

double dot(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    const double* px = x.data();
    const double* py = y.data();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += px[i] * py[i];
    return s;
}

double max_abs(std::span<const double> x) {
    const std::size_t n = x.size();
    const double* p = x.data();
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_max_pd(acc, _mm256_and_pd(mask, _mm256_loadu_pd(p + i)));
    double m = hmax(acc);
    for (; i < n; ++i) m = std::max(m, std::fabs(p[i]));
    return m;
}

double sum_sq_dev(std::span<const double> x, double mean) {
    const std::size_t n = x.size();
    const double* p = x.data();
    const __m256d m = _mm256_set1_pd(mean);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(p + i), m);
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double d = p[i] - mean;
        s += d * d;
    }
    return s;
}

void lorentz_dot_batch(const double* x1, const double* x2, const double* x3,
                       const double* y1, const double* y2, const double* y3,
                       double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d r = _mm256_mul_pd(_mm256_loadu_pd(x2 + i), _mm256_loadu_pd(y2 + i));
        r = _mm256_fmadd_pd(_mm256_loadu_pd(x3 + i), _mm256_loadu_pd(y3 + i), r);
        r = _mm256_fnmadd_pd(_mm256_loadu_pd(x1 + i), _mm256_loadu_pd(y1 + i), r);
        _mm256_storeu_pd(out + i, r);
    }
    for (; i < n; ++i)
        out[i] = -x1[i] * y1[i] + x2[i] * y2[i] + x3[i] * y3[i];
}

Moments3 lorentz_moments(const double* v1, const double* v2, const double* v3,
                         std::size_t n) {
    Moments3 m;
    m.count = n;
    __m256d s1 = _mm256_setzero_pd(), s2 = _mm256_setzero_pd(), s3 = _mm256_setzero_pd();
    __m256d o11 = _mm256_setzero_pd(), o12 = _mm256_setzero_pd(), o13 = _mm256_setzero_pd();
    __m256d o22 = _mm256_setzero_pd(), o23 = _mm256_setzero_pd(), o33 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        // z = G v: flip the sign of the first component.
        const __m256d z1 = _mm256_sub_pd(_mm256_setzero_pd(), _mm256_loadu_pd(v1 + i));
        const __m256d z2 = _mm256_loadu_pd(v2 + i);
        const __m256d z3 = _mm256_loadu_pd(v3 + i);
        s1 = _mm256_add_pd(s1, z1);
        s2 = _mm256_add_pd(s2, z2);
        s3 = _mm256_add_pd(s3, z3);
        o11 = _mm256_fmadd_pd(z1, z1, o11);
        o12 = _mm256_fmadd_pd(z1, z2, o12);
        o13 = _mm256_fmadd_pd(z1, z3, o13);
        o22 = _mm256_fmadd_pd(z2, z2, o22);
        o23 = _mm256_fmadd_pd(z2, z3, o23);
        o33 = _mm256_fmadd_pd(z3, z3, o33);
    }
    m.sum[0] = hsum(s1);
    m.sum[1] = hsum(s2);
    m.sum[2] = hsum(s3);
    m.sum_outer[0][0] = hsum(o11);
    m.sum_outer[0][1] = hsum(o12);
    m.sum_outer[0][2] = hsum(o13);
    m.sum_outer[1][1] = hsum(o22);
    m.sum_outer[1][2] = hsum(o23);
    m.sum_outer[2][2] = hsum(o33);
    for (; i < n; ++i) {
        const double z1 = -v1[i], z2 = v2[i], z3 = v3[i];
        m.sum[0] += z1;
        m.sum[1] += z2;
        m.sum[2] += z3;
        m.sum_outer[0][0] += z1 * z1;
        m.sum_outer[0][1] += z1 * z2;
        m.sum_outer[0][2] += z1 * z3;
        m.sum_outer[1][1] += z2 * z2;
        m.sum_outer[1][2] += z2 * z3;
        m.sum_outer[2][2] += z3 * z3;
    }
    m.sum_outer[1][0] = m.sum_outer[0][1];
    m.sum_outer[2][0] = m.sum_outer[0][2];
    m.sum_outer[2][1] = m.sum_outer[1][2];
    return m;
}

}  // namespace slantsurf::kernels::avx2

#endif  // __x86_64__
