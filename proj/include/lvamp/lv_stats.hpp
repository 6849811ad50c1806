#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lvamp/fixed_point.hpp"
#include "lvamp/matrix.hpp"

namespace lvamp {

/// Consecutive index blocks of sizes n_1..n_q summing to n.
struct BlockPartition {
    std::vector<std::size_t> sizes;

    explicit BlockPartition(std::vector<std::size_t> sizes_in);
    /// Sizes from target fractions by largest-remainder rounding.
    static BlockPartition from_fractions(std::size_t n, const std::vector<double>& fractions);

    std::size_t n() const;
    std::size_t blocks() const { return sizes.size(); }
    double proportion(std::size_t j) const;  // c_j = n_j / n
};

/// Sorted sample defining an empirical measure.
struct EmpiricalMeasure {
    std::vector<double> values;  // ascending

    explicit EmpiricalMeasure(std::vector<double> sample);
    std::size_t size() const { return values.size(); }
    /// Empirical quantile at level p in (0,1) (left-continuous inverse CDF).
    double quantile(double p) const;
};

/// The limiting abundance law pi = (kappa/delta) (sigma Z + r)_+ of
/// Theorem 3.3, together with the growth law it was built from.
struct LimitLaw {
    SystemSolution sol;
    GrowthLaw law;

    double scale() const { return sol.kappa / sol.delta; }  // = 1 + rho*gamma/delta^2
};

/// m i.i.d. draws from pi.
Vector pi_sample(const LimitLaw& law, std::size_t m, std::uint64_t seed);

/// Density of the surviving-species law f_surv at y:
/// (delta/kappa) f_{sigma Z + r}(delta y / kappa) 1_{y > 0} / gamma.
double f_surv_density(const LimitLaw& law, double y);

/// Per-block variant: same (delta, sigma, kappa) but the block growth law
/// and gamma_j = P(sigma Z + r_j > 0).
double f_surv_block(const LimitLaw& global, const GrowthLaw& block_law, double y);

/// gamma_j for a block law under the global solution.
double gamma_block(const LimitLaw& global, const GrowthLaw& block_law);

/// Fraction of entries strictly greater than eps.
double survival_fraction(const Vector& x_star, double eps = 0.0);

/// Wasserstein-2 distance between two 1-D empirical measures via the
/// quantile coupling; equal sizes reduce to the sorted coupling.
double wasserstein2_1d(const EmpiricalMeasure& a, const EmpiricalMeasure& b);

struct BlockSummary {
    double survival;
    EmpiricalMeasure positives;
};

/// Per-block survival fraction and empirical measure of positive entries.
std::vector<BlockSummary> block_statistics(const Vector& x_star, const BlockPartition& part);

}  // namespace lvamp
