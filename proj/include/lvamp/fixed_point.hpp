#pragma once

#include <vector>

#include "lvamp/errors.hpp"

namespace lvamp {

/// Finite atomic distribution of the limiting growth rate: nonnegative atom
/// values with positive weights summing to one, not all mass at zero.
class GrowthLaw {
public:
    struct Atom {
        double value;
        double weight;
    };

    explicit GrowthLaw(std::vector<Atom> atoms);
    static GrowthLaw constant(double r) { return GrowthLaw({{r, 1.0}}); }

    const std::vector<Atom>& atoms() const { return atoms_; }
    double second_moment() const;
    GrowthLaw scaled(double factor) const;  // law of factor * r

    /// E[g(r)] as an exact finite sum over atoms.
    template <typename F>
    double expect(F&& g) const {
        double s = 0.0;
        for (const Atom& a : atoms_) s += a.weight * g(a.value);
        return s;
    }

private:
    std::vector<Atom> atoms_;
};

/// Q(x) = P(Z > x) for Z standard normal, computed through erfc.
double q_tail(double x);

/// Standard normal density.
double normal_pdf(double x);

/// f(x) = (1 + x^2) Q(x) - x phi(x); satisfies E(sigma Z + r)_+^2 =
/// sigma^2 f(-r/sigma).
double f_aux(double x);

/// f'(x) = 2 (x Q(x) - phi(x)).
double f_aux_prime(double x);

/// Solution of the three-equation system for (delta, sigma, gamma).
struct SystemSolution {
    double delta;
    double sigma;
    double gamma;
    double kappa;
    double rho;
    double residual_delta;  // delta + rho*gamma/delta - kappa
    double residual_sigma;  // sigma^2 - E(sigma Z + r)_+^2 / delta^2
    double residual_gamma;  // gamma - P(sigma Z + r > 0)
};

/// Unique sigma > 0 with delta^2 = E f(-r/sigma). Requires delta > 1/sqrt(2).
double solve_sigma(double delta, const GrowthLaw& law);

/// gamma(delta) = E Q(-r / sigma(delta)).
double gamma_of(double delta, const GrowthLaw& law);
double gamma_given_sigma(double sigma, const GrowthLaw& law);

/// Solves kappa = delta + rho*gamma(delta)/delta by bisection on delta;
/// requires kappa > (1+rho)/sqrt(2).
SystemSolution solve_system(double kappa, double rho, const GrowthLaw& law);

/// x(delta) = -1/sigma(delta) and its analytic derivative
/// x'(delta) = delta x / (delta^2 - gamma(delta)).
double x_of(double delta, const GrowthLaw& law);
double x_derivative(double delta, const GrowthLaw& law);

/// gamma'(delta) = -x'(delta) E[r phi(r x(delta))].
double gamma_derivative(double delta, const GrowthLaw& law);

}  // namespace lvamp
