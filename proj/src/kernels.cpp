#include <cstdlib>
#include <string>

#include "lvamp/kernels.hpp"

namespace lvamp::kernels {

const Ops* avx2_ops_impl();  // defined in kernels_avx2.cpp

const Ops* avx2_ops() {
#if defined(__x86_64__) || defined(_M_X64)
    if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) return nullptr;
#endif
    return avx2_ops_impl();
}

namespace {

const Ops* pick_default() {
    if (const char* env = std::getenv("LVAMP_KERNELS")) {
        std::string want(env);
        if (want == "scalar") return &scalar_ops();
        if (want == "avx2" && avx2_ops()) return avx2_ops();
    }
    if (const Ops* simd = avx2_ops()) return simd;
    return &scalar_ops();
}

const Ops*& active_slot() {
    static const Ops* slot = pick_default();
    return slot;
}

}  // namespace

const Ops& active() { return *active_slot(); }

bool set_backend(std::string_view name) {
    if (name == "scalar") {
        active_slot() = &scalar_ops();
        return true;
    }
    if (name == "avx2") {
        if (const Ops* simd = avx2_ops()) {
            active_slot() = simd;
            return true;
        }
        return false;
    }
    if (name == "auto") {
        active_slot() = avx2_ops() ? avx2_ops() : &scalar_ops();
        return true;
    }
    return false;
}

void matvec(const Matrix& A, const double* x, double* y) {
    const Ops& ops = active();
    const std::size_t rows = A.rows(), cols = A.cols();
    for (std::size_t i = 0; i < rows; ++i) y[i] = ops.dot(A.row(i), x, cols);
}

void matvec_transpose(const Matrix& A, const double* x, double* y) {
    const Ops& ops = active();
    const std::size_t rows = A.rows(), cols = A.cols();
    for (std::size_t j = 0; j < cols; ++j) y[j] = 0.0;
    for (std::size_t i = 0; i < rows; ++i) ops.axpy(x[i], A.row(i), y, cols);
}

}  // namespace lvamp::kernels
