#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace lvamp {
namespace quad {

/// Gauss-Hermite rule for the standard normal weight: E g(Z) ~ sum w_i g(x_i).
struct HermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Rule of the given order for the weight e^{-x^2/2}/sqrt(2*pi). Orders 64 and
/// 128 are cached.
const HermiteRule& gauss_hermite(std::size_t order);

/// Adaptive Simpson integration of f over [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

/// E g(Z) for Z standard normal. Evaluates the order-64 and order-128
/// Gauss-Hermite rules; on discrepancy above the agreement threshold (kinked
/// integrands) falls back to adaptive integration of g(x) phi(x).
double expect_normal(const std::function<double(double)>& g, double tol = 1e-10);

/// E g(Z) when the non-smooth points of g are known: integrates g(x) phi(x)
/// over [-12, 12] with panels split at the breakpoints, fixed-order
/// Gauss-Legendre per panel. Deterministic cost and smooth in the breakpoint
/// locations, unlike the adaptive fallback of expect_normal.
double expect_normal_split(const std::function<double(double)>& g,
                           const std::vector<double>& breakpoints);

}  // namespace quad
}  // namespace lvamp
