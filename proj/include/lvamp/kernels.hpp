#pragma once

#include <cstddef>
#include <string_view>

#include "lvamp/matrix.hpp"

// Data-parallel inner loops. A scalar reference implementation is always
// available; an AVX2 variant is selected at runtime when the CPU supports it.
// The two backends are equivalence-tested against each other; within one
// backend every reduction has a fixed association order, so results are
// reproducible run to run.
namespace lvamp::kernels {

struct Ops {
    const char* name;
    double (*dot)(const double* a, const double* b, std::size_t n);
    double (*sum)(const double* x, std::size_t n);
    // y += alpha * x
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    // y_i = max(x_i, 0)
    void (*positive_part)(const double* x, double* y, std::size_t n);
    // q_i = max(u_i + a_i, 0) * scale
    void (*shift_positive_scale)(const double* u, const double* a, double scale,
                                 double* q, std::size_t n);
    std::size_t (*count_greater)(const double* x, double threshold, std::size_t n);
    double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
};

const Ops& scalar_ops();

/// AVX2 backend, or nullptr when unsupported (non-x86 build or older CPU).
const Ops* avx2_ops();

/// Currently active backend. Defaults to the best supported one; the
/// LVAMP_KERNELS environment variable ("scalar" or "avx2") overrides.
const Ops& active();

/// Force a backend by name ("scalar", "avx2", "auto"). Returns false if the
/// requested backend is unavailable.
bool set_backend(std::string_view name);

inline double dot(const double* a, const double* b, std::size_t n) {
    return active().dot(a, b, n);
}
inline double sum(const double* x, std::size_t n) { return active().sum(x, n); }
inline double mean(const double* x, std::size_t n) {
    return n == 0 ? 0.0 : active().sum(x, n) / static_cast<double>(n);
}

/// y = A x  (row-major; one dot product per row)
void matvec(const Matrix& A, const double* x, double* y);

/// y = A^T x  (accumulated row by row so the memory access stays contiguous)
void matvec_transpose(const Matrix& A, const double* x, double* y);

}  // namespace lvamp::kernels
