#pragma once

// Independent reference implementations used only by the tests. These
// deliberately avoid the library's own numerics (Eigen SVD instead of
// Lanczos, composite Simpson instead of Gauss-Hermite, damped Picard instead
// of bisection) so that agreement is meaningful.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "lvamp/fixed_point.hpp"
#include "lvamp/matrix.hpp"

namespace oracles {

inline Eigen::MatrixXd to_eigen(const lvamp::Matrix& m) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    return e;
}

inline double spectral_norm(const lvamp::Matrix& m) {
    return Eigen::JacobiSVD<Eigen::MatrixXd>(to_eigen(m)).singularValues()(0);
}

inline double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI); }

// Composite Simpson on a smooth integrand.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// E (sigma Z + r)_+^2 by integrating over the smooth region beyond the kink.
inline double positive_square_moment(double sigma, double r) {
    const double z0 = std::max(-r / sigma, -12.0);
    if (z0 >= 12.0) return 0.0;
    return simpson(
        [&](double z) {
            const double v = sigma * z + r;
            return v * v * normal_pdf(z);
        },
        z0, 12.0, 4000);
}

inline double survival_probability(double sigma, double r) {
    return 0.5 * std::erfc((-r / sigma) / std::sqrt(2.0));
}

// Damped fixed-point solver for sigma at fixed delta:
// sigma <- sqrt(E(sigma Z + r)_+^2) / delta.
inline double solve_sigma_picard(double delta, const lvamp::GrowthLaw& law) {
    double sigma = 1.0;
    for (int it = 0; it < 100000; ++it) {
        double moment = 0.0;
        for (const auto& a : law.atoms())
            moment += a.weight * positive_square_moment(sigma, a.value);
        const double next = std::sqrt(moment) / delta;
        const double updated = 0.5 * sigma + 0.5 * next;
        if (std::fabs(updated - sigma) < 1e-13) return updated;
        sigma = updated;
    }
    return sigma;
}

struct SystemOracle {
    double delta, sigma, gamma;
};

// Independent damped Picard on (delta, sigma) for the full system.
inline SystemOracle solve_system_picard(double kappa, double rho, const lvamp::GrowthLaw& law) {
    double delta = std::max(kappa, 1.0);
    double sigma = 1.0, gamma = 0.5;
    for (int it = 0; it < 20000; ++it) {
        sigma = solve_sigma_picard(delta, law);
        gamma = 0.0;
        for (const auto& a : law.atoms()) gamma += a.weight * survival_probability(sigma, a.value);
        const double target = kappa - rho * gamma / delta;
        const double updated = 0.5 * delta + 0.5 * target;
        if (std::fabs(updated - delta) < 1e-12) {
            delta = updated;
            break;
        }
        delta = updated;
    }
    sigma = solve_sigma_picard(delta, law);
    gamma = 0.0;
    for (const auto& a : law.atoms()) gamma += a.weight * survival_probability(sigma, a.value);
    return {delta, sigma, gamma};
}

// Minimal-cost W2^2 over all pairings of two equal small samples.
inline double w2_brute_force(std::vector<double> a, std::vector<double> b) {
    std::sort(b.begin(), b.end());
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> perm(b.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        double cost = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double d = a[i] - b[perm[i]];
            cost += d * d;
        }
        best = std::min(best, cost);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::sqrt(best / static_cast<double>(a.size()));
}

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace oracles
