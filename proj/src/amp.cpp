#include <cmath>

#include "lvamp/amp.hpp"
#include "lvamp/errors.hpp"
#include "lvamp/kernels.hpp"

namespace lvamp {
namespace {

void check_dims(const Matrix& A, const Vector& u, const Matrix& B, const ActivationFamily& fam,
                const char* where) {
    if (!A.square()) throw DimensionError(std::string(where) + ": A must be square");
    if (u.size() != A.rows()) throw DimensionError(std::string(where) + ": u length != n");
    if (B.rows() != A.rows() || B.cols() != fam.p)
        throw DimensionError(std::string(where) + ": B must be n x p");
}

Vector activate(const Vector& u, const Matrix& B, std::size_t k, const ActivationFamily& fam) {
    const std::size_t n = u.size();
    Vector q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = fam.h(k, u[i], B.row(i));
    return q;
}

}  // namespace

double onsager_coefficient(const Vector& u, const Matrix& B, std::size_t k,
                           const ActivationFamily& fam) {
    const std::size_t n = u.size();
    if (B.rows() != n || B.cols() != fam.p)
        throw DimensionError("onsager_coefficient: B must be n x p with n = len(u)");
    if (n == 0) throw DimensionError("onsager_coefficient: empty input");
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += fam.dh(k, u[i], B.row(i));
    return s / static_cast<double>(n);
}

Vector amp_init(const Matrix& A, const Vector& u0, const Matrix& B, const ActivationFamily& fam) {
    check_dims(A, u0, B, fam, "amp_init");
    const Vector q = activate(u0, B, 0, fam);
    Vector u1(u0.size());
    kernels::matvec(A, q.data(), u1.data());
    return u1;
}

Vector amp_step(const Matrix& A, const Vector& u_k, const Vector& u_prev, const Matrix& B,
                std::size_t k, double rho, const ActivationFamily& fam) {
    check_dims(A, u_k, B, fam, "amp_step");
    if (u_prev.size() != u_k.size())
        throw DimensionError("amp_step: previous iterate length mismatch");
    if (k < 1) throw DomainError("amp_step: k must be >= 1 (use amp_init for step 0)");

    const std::size_t n = u_k.size();
    const Vector qk = activate(u_k, B, k, fam);
    const Vector qprev = activate(u_prev, B, k - 1, fam);
    const double dk = onsager_coefficient(u_k, B, k, fam);

    Vector out(n);
    kernels::matvec(A, qk.data(), out.data());
    const double c = rho * dk;
    for (std::size_t i = 0; i < n; ++i) out[i] -= c * qprev[i];
    return out;
}

AMPTrace amp_run(const Matrix& A, const Matrix& B, const Vector& u0, const ActivationFamily& fam,
                 double rho, std::size_t K) {
    if (K < 1) throw DomainError("amp_run: K must be >= 1");
    check_dims(A, u0, B, fam, "amp_run");

    AMPTrace trace;
    trace.B = B;
    trace.u.reserve(K);
    trace.q.reserve(K);
    trace.d.reserve(K);

    trace.q.push_back(activate(u0, B, 0, fam));
    trace.d.push_back(0.0);  // d_0 = 0 by convention
    trace.u.push_back(amp_init(A, u0, B, fam));

    for (std::size_t k = 1; k < K; ++k) {
        const Vector& uk = trace.u.back();
        for (double v : uk)
            if (!std::isfinite(v))
                throw NumericalError("amp_run: non-finite iterate", static_cast<long>(k));
        const Vector& uprev = k >= 2 ? trace.u[k - 2] : u0;
        trace.q.push_back(activate(uk, B, k, fam));
        trace.d.push_back(onsager_coefficient(uk, B, k, fam));
        trace.u.push_back(amp_step(A, uk, uprev, B, k, rho, fam));
    }
    for (double v : trace.u.back())
        if (!std::isfinite(v))
            throw NumericalError("amp_run: non-finite iterate", static_cast<long>(K));
    return trace;
}

}  // namespace lvamp
