#include <algorithm>
#include <cmath>

#include "lvamp/kernels.hpp"

namespace lvamp::kernels {
namespace {

// Four independent accumulators, combined pairwise at the end. Mirrors the
// lane structure of the SIMD backends so the two stay numerically close.
double scalar_dot(const double* a, const double* b, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += a[i] * b[i];
    return ((s0 + s2) + (s1 + s3)) + tail;
}

double scalar_sum(const double* x, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += x[i];
        s1 += x[i + 1];
        s2 += x[i + 2];
        s3 += x[i + 3];
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += x[i];
    return ((s0 + s2) + (s1 + s3)) + tail;
}

void scalar_axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scalar_positive_part(const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = std::max(x[i], 0.0);
}

void scalar_shift_positive_scale(const double* u, const double* a, double scale,
                                 double* q, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) q[i] = std::max(u[i] + a[i], 0.0) * scale;
}

std::size_t scalar_count_greater(const double* x, double threshold, std::size_t n) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += (x[i] > threshold) ? 1 : 0;
    return c;
}

double scalar_max_abs_diff(const double* a, const double* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{
        "scalar",
        scalar_dot,
        scalar_sum,
        scalar_axpy,
        scalar_positive_part,
        scalar_shift_positive_scale,
        scalar_count_greater,
        scalar_max_abs_diff,
    };
    return ops;
}

}  // namespace lvamp::kernels
