#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lvamp/activation.hpp"
#include "lvamp/fixed_point.hpp"
#include "lvamp/matrix.hpp"

namespace lvamp {

/// Atomic joint law of (u-bar, b-bar): each atom fixes the scalar initial
/// value and the p activation parameters.
struct InputLaw {
    struct Atom {
        double u;
        std::vector<double> b;
        double weight;
    };
    std::vector<Atom> atoms;
};

/// Joint law for the LV scheme: u0 = 1, a = (kappa/delta) r per atom of the
/// growth law.
InputLaw lv_input_law(const GrowthLaw& law, double kappa, double delta);

/// Density-evolution covariance family: R is k x k, entry (i, j) equals
/// E[h_{i-1}(Z_{i-1}, b) h_{j-1}(Z_{j-1}, b)] with Z_0 = u-bar and
/// (Z_1..Z_{k}) centered Gaussian with covariance R itself.
struct DECovariance {
    std::size_t order = 0;
    Matrix R;
    std::string provenance;

    double sigma_sq(std::size_t k) const;  // R_{k,k}, 1-based
};

/// R^1 = E h_0^2(u-bar, b-bar) (exact atom sum).
DECovariance de_init(const ActivationFamily& fam, const InputLaw& law,
                     std::string provenance = "");

/// Extends R^k to R^{k+1}; the upper-left k x k block is copied bit-for-bit,
/// new entries are Gaussian expectations over the 2x2 marginals of R^k.
DECovariance de_extend(const DECovariance& prev, const ActivationFamily& fam,
                       const InputLaw& law);

/// Smallest eigenvalue of the covariance (small dense Jacobi sweep); used for
/// the PSD invariant.
double de_min_eigenvalue(const DECovariance& cov);

/// Scalar LV density evolution, Eq.-(22)-style closed-form recursion.
struct ScalarDE {
    double delta = 0.0;
    GrowthLaw a_law;
    std::vector<double> theta;  // theta_1 .. theta_K
};

ScalarDE de_scalar_lv(double delta, const GrowthLaw& a_law, std::size_t K);

/// sigma_k = (delta / kappa) * theta_k.
std::vector<double> sigma_sequence(const std::vector<double>& theta, double delta, double kappa);

}  // namespace lvamp
