// AVX2 + FMA variants of the inner-loop kernels. This translation unit is
// compiled with -mavx2 -mfma; callers must check avx2_ops() != nullptr before
// use (runtime CPU detection lives in kernels.cpp).

#include "lvamp/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace lvamp::kernels {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double avx2_dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double avx2_sum(const double* x, std::size_t n) {
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

void avx2_axpy(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void avx2_positive_part(const double* x, double* y, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_max_pd(_mm256_loadu_pd(x + i), zero));
    for (; i < n; ++i) y[i] = std::max(x[i], 0.0);
}

void avx2_shift_positive_scale(const double* u, const double* a, double scale,
                               double* q, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d vs = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_add_pd(_mm256_loadu_pd(u + i), _mm256_loadu_pd(a + i));
        _mm256_storeu_pd(q + i, _mm256_mul_pd(_mm256_max_pd(v, zero), vs));
    }
    for (; i < n; ++i) q[i] = std::max(u[i] + a[i], 0.0) * scale;
}

std::size_t avx2_count_greater(const double* x, double threshold, std::size_t n) {
    const __m256d vt = _mm256_set1_pd(threshold);
    std::size_t c = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d cmp = _mm256_cmp_pd(_mm256_loadu_pd(x + i), vt, _CMP_GT_OQ);
        c += static_cast<std::size_t>(_mm_popcnt_u32(_mm256_movemask_pd(cmp)));
    }
    for (; i < n; ++i) c += (x[i] > threshold) ? 1 : 0;
    return c;
}

double avx2_max_abs_diff(const double* a, const double* b, std::size_t n) {
    const __m256d signmask = _mm256_set1_pd(-0.0);
    __m256d vm = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        vm = _mm256_max_pd(vm, _mm256_andnot_pd(signmask, d));
    }
    double m = std::max(std::max(vm[0], vm[1]), std::max(vm[2], vm[3]));
    for (; i < n; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

}  // namespace

const Ops* avx2_ops_impl() {
    static const Ops ops{
        "avx2",
        avx2_dot,
        avx2_sum,
        avx2_axpy,
        avx2_positive_part,
        avx2_shift_positive_scale,
        avx2_count_greater,
        avx2_max_abs_diff,
    };
    return &ops;
}

}  // namespace lvamp::kernels

#else

namespace lvamp::kernels {
const Ops* avx2_ops_impl() { return nullptr; }
}  // namespace lvamp::kernels

#endif
