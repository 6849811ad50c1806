#pragma once

#include <string>

#include "lvamp/matrix.hpp"

namespace lvamp {

/// Linear complementarity problem: find x >= 0 with Mx + q >= 0 and
/// x^T (Mx + q) = 0.
struct LCPInstance {
    Matrix M;
    Vector q;
};

/// Equilibrium of the Lotka-Volterra system with interaction matrix A/kappa.
struct EquilibriumResult {
    Vector x_star;
    bool gate_passed = false;
    std::string solver;            // "contraction", "contraction-damped", "lemke", or "gate"
    double complementarity = 0.0;  // max_i |x_i (r - (I - Sigma) x)_i|
    double feasibility = 0.0;      // max_i (r - (I - Sigma) x)_i
};

/// Lemke complementary pivoting with covering vector 1 and lexicographic
/// ratio test. Throws on ray termination.
Vector lemke(const LCPInstance& inst);

/// Picard iteration for z = Sigma z_+ + r from z = 0 (caller takes the
/// positive part). Requires the gate norm ||(Sigma + Sigma^T)/2|| < 1.
Vector contraction_solve(const Matrix& Sigma, const Vector& r);

/// x_star via the Eq. (15) gate: zero when ||A||/kappa >= 1 (symmetrized
/// norm), otherwise the LCP solution with Sigma = A/kappa. Contraction is the
/// default route with damped-Picard and Lemke fallbacks.
EquilibriumResult equilibrium(const Matrix& A, double kappa, const Vector& r);

}  // namespace lvamp
