#pragma once

#include <cstddef>
#include <vector>

#include "lvamp/activation.hpp"
#include "lvamp/matrix.hpp"

namespace lvamp {

/// Full record of an elliptic AMP run: iterates u^1..u^K, activated vectors
/// q^0..q^{K-1} with q^k = h_k(u^k, B), and Onsager scalars d_0..d_{K-1}
/// (d_0 = 0 by convention; q^{-1} is the zero vector).
struct AMPTrace {
    Matrix B;
    std::vector<Vector> u;
    std::vector<Vector> q;
    std::vector<double> d;
};

/// d_k = (1/n) sum_i d1 h_k(u_i, B_{i,*}).
double onsager_coefficient(const Vector& u, const Matrix& B, std::size_t k,
                           const ActivationFamily& fam);

/// u^1 = A h_0(u^0, B); no Onsager term at step 0.
Vector amp_init(const Matrix& A, const Vector& u0, const Matrix& B, const ActivationFamily& fam);

/// u^{k+1} = A h_k(u^k, B) - rho * <d1 h_k>_n * h_{k-1}(u^{k-1}, B), k >= 1.
Vector amp_step(const Matrix& A, const Vector& u_k, const Vector& u_prev, const Matrix& B,
                std::size_t k, double rho, const ActivationFamily& fam);

/// Runs the scheme for K steps and records the trace. Throws NumericalError
/// carrying the iteration index if an iterate goes non-finite.
AMPTrace amp_run(const Matrix& A, const Matrix& B, const Vector& u0, const ActivationFamily& fam,
                 double rho, std::size_t K);

}  // namespace lvamp
