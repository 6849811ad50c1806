#pragma once

#include <cstdint>

#include "lvamp/matrix.hpp"

namespace lvamp {

/// Parameters of the Gaussian elliptic ensemble: entries have unit variance,
/// transposed pairs (M_ij, M_ji) have correlation rho. Sampling is a pure
/// function of (n, rho, seed).
struct EllipticEnsemble {
    std::size_t n = 0;
    double rho = 0.0;
    std::uint64_t seed = 0;

    Matrix sample() const;             // M ~ Elliptic(n, rho)
    Matrix sample_normalized() const;  // A = M / sqrt(n)
};

/// G = (X + X^T)/sqrt(2) with X i.i.d. standard normal. Exactly symmetric.
Matrix sample_goe(std::size_t n, std::uint64_t seed);

/// (X - X^T)/sqrt(2). Exactly antisymmetric with zero diagonal.
Matrix sample_antisymmetric_goe(std::size_t n, std::uint64_t seed);

/// sqrt((1+rho)/2) G + sqrt((1-rho)/2) G~ with independent G, G~.
Matrix sample_elliptic(std::size_t n, double rho, std::uint64_t seed);

Matrix sample_normalized_elliptic(std::size_t n, double rho, std::uint64_t seed);

/// Largest singular value, computed by a Lanczos iteration on A^T A with a
/// deterministic all-ones start vector. Throws NumericalError if the
/// iteration fails to converge and DomainError on non-square or non-finite
/// input.
double spectral_norm(const Matrix& a);

/// Largest singular value of (A + A^T)/2. This is the quantity that
/// converges to sqrt(2(1+rho)) for normalized elliptic matrices and gates
/// the existence of the Lotka-Volterra equilibrium.
double symmetrized_norm(const Matrix& a);

}  // namespace lvamp
