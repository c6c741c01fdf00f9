#include "lrp/kernels.hpp"

#include <cmath>
#include <immintrin.h>

#define AVX2 __attribute__((target("avx2")))

namespace lrp::simd::avx2 {

namespace {

AVX2 inline __m256d vfabs(__m256d v) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

// lane-order reduction that matches the scalar left fold for max with m >= 0 etc.
AVX2 inline double hmax(__m256d v, double init) {
    alignas(32) double t[4];
    _mm256_store_pd(t, v);
    double m = init;
    for (double x : t) m = x > m ? x : m;
    return m;
}

} // namespace

AVX2 double max_abs_diff(const double* a, const double* b, size_t n) {
    __m256d m = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = vfabs(_mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
        m = _mm256_max_pd(d, m);
    }
    double r = hmax(m, 0.0);
    for (; i < n; ++i) {
        double d = std::fabs(a[i] - b[i]);
        r = d > r ? d : r;
    }
    return r;
}

AVX2 double max_violation(const double* lo, const double* hi, size_t n) {
    __m256d m = _mm256_set1_pd(-INFINITY);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(lo + i), _mm256_loadu_pd(hi + i));
        m = _mm256_max_pd(d, m);
    }
    double r = hmax(m, -INFINITY);
    for (; i < n; ++i) {
        double d = lo[i] - hi[i];
        r = d > r ? d : r;
    }
    return r;
}

AVX2 double max_abs(const double* a, size_t n) {
    __m256d m = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) m = _mm256_max_pd(vfabs(_mm256_loadu_pd(a + i)), m);
    double r = hmax(m, 0.0);
    for (; i < n; ++i) {
        double d = std::fabs(a[i]);
        r = d > r ? d : r;
    }
    return r;
}

AVX2 void vmax(const double* a, const double* b, double* out, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_max_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] > b[i] ? a[i] : b[i];
}

AVX2 void vmin(const double* a, const double* b, double* out, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_min_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] < b[i] ? a[i] : b[i];
}

AVX2 void vabs(const double* a, double* out, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, vfabs(_mm256_loadu_pd(a + i)));
    for (; i < n; ++i) out[i] = std::fabs(a[i]);
}

AVX2 void omega_extrapolate(const double* x0, const double* x1, const double* xp, const double* xn,
                            double* out, size_t n, const Omega& o) {
    const __m256d sep = _mm256_set1_pd(o.min_sep);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d fl = _mm256_set1_pd(o.floor);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a0 = _mm256_loadu_pd(x0 + i), a1 = _mm256_loadu_pd(x1 + i);
        __m256d ap = _mm256_loadu_pd(xp + i), an = _mm256_loadu_pd(xn + i);
        __m256d den = _mm256_sub_pd(ap, a0);
        __m256d okd = _mm256_cmp_pd(vfabs(den), sep, _CMP_GT_OQ);
        __m256d b = _mm256_div_pd(_mm256_sub_pd(an, a1), den);
        __m256d okb = _mm256_and_pd(_mm256_cmp_pd(b, zero, _CMP_GE_OQ), _mm256_cmp_pd(b, one, _CMP_LT_OQ));
        __m256d est = _mm256_div_pd(_mm256_sub_pd(an, _mm256_mul_pd(b, ap)), _mm256_sub_pd(one, b));
        __m256d cl = o.dir > 0 ? _mm256_max_pd(est, an) : _mm256_min_pd(est, an);
        __m256d r = _mm256_blendv_pd(an, cl, _mm256_and_pd(okd, okb));
        _mm256_storeu_pd(out + i, _mm256_max_pd(r, fl));
    }
    scalar::omega_extrapolate(x0 + i, x1 + i, xp + i, xn + i, out + i, n - i, o);
}

} // namespace lrp::simd::avx2
