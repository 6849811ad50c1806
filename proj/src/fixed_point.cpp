#include <cmath>
#include <numbers>

#include "lvamp/fixed_point.hpp"

namespace lvamp {

GrowthLaw::GrowthLaw(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw DomainError("GrowthLaw: no atoms");
    double total = 0.0;
    bool has_positive = false;
    for (const Atom& a : atoms_) {
        if (a.value < 0.0) throw DomainError("GrowthLaw: negative atom value");
        if (a.weight <= 0.0) throw DomainError("GrowthLaw: non-positive atom weight");
        if (a.value > 0.0) has_positive = true;
        total += a.weight;
    }
    if (std::fabs(total - 1.0) > 1e-12) throw DomainError("GrowthLaw: weights must sum to 1");
    if (!has_positive) throw DomainError("GrowthLaw: law must differ from the point mass at 0");
}

double GrowthLaw::second_moment() const {
    return expect([](double r) { return r * r; });
}

GrowthLaw GrowthLaw::scaled(double factor) const {
    if (factor <= 0.0) throw DomainError("GrowthLaw::scaled: factor must be positive");
    std::vector<Atom> scaled_atoms = atoms_;
    for (Atom& a : scaled_atoms) a.value *= factor;
    return GrowthLaw(std::move(scaled_atoms));
}

double q_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double f_aux(double x) { return (1.0 + x * x) * q_tail(x) - x * normal_pdf(x); }

double f_aux_prime(double x) { return 2.0 * (x * q_tail(x) - normal_pdf(x)); }

namespace {

constexpr double kDeltaFloor = 0.70710678118654752440;  // 1/sqrt(2)

double f_mean(double sigma, const GrowthLaw& law) {
    return law.expect([&](double r) { return f_aux(-r / sigma); });
}

}  // namespace

double solve_sigma(double delta, const GrowthLaw& law) {
    if (!(delta > kDeltaFloor))
        throw DomainError("solve_sigma: out of domain, requires delta > 1/sqrt(2)");
    const double target = delta * delta;

    // E f(-r/sigma) decreases in sigma from +inf down to 1/2, so a sign
    // change brackets the unique root.
    double lo = 1.0, hi = 1.0;
    int expansions = 0;
    while (f_mean(lo, law) < target) {
        lo *= 0.5;
        if (++expansions > 200) throw NumericalError("solve_sigma: bracket expansion failed");
    }
    expansions = 0;
    while (f_mean(hi, law) > target) {
        hi *= 2.0;
        if (++expansions > 200)
            throw NumericalError("solve_sigma: no solution found while expanding bracket");
    }
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 300; ++it) {
        mid = 0.5 * (lo + hi);
        const double value = f_mean(mid, law);
        if (std::fabs(value - target) <= 1e-12 || hi - lo <= 1e-14 * mid) break;
        if (value > target)
            lo = mid;
        else
            hi = mid;
    }
    return mid;
}

double gamma_given_sigma(double sigma, const GrowthLaw& law) {
    return law.expect([&](double r) { return q_tail(-r / sigma); });
}

double gamma_of(double delta, const GrowthLaw& law) {
    return gamma_given_sigma(solve_sigma(delta, law), law);
}

SystemSolution solve_system(double kappa, double rho, const GrowthLaw& law) {
    if (!(rho >= -1.0 && rho <= 1.0)) throw DomainError("solve_system: rho outside [-1, 1]");
    if (!(kappa > (1.0 + rho) / std::numbers::sqrt2))
        throw DomainError("solve_system: out of domain, requires kappa > (1+rho)/sqrt(2)");

    const auto h = [&](double delta) { return delta + rho * gamma_of(delta, law) / delta; };

    // h is strictly increasing on (1/sqrt(2), inf) with h(1/sqrt(2)+) =
    // (1+rho)/sqrt(2) and h -> inf.
    double lo = kDeltaFloor + 1e-6;
    double hi = std::max(kappa, 2.0);
    int expansions = 0;
    while (h(hi) < kappa) {
        hi *= 2.0;
        if (++expansions > 200) throw NumericalError("solve_system: bracket expansion failed");
    }
    if (h(lo) > kappa) lo = kDeltaFloor + 1e-12;

    double delta = 0.5 * (lo + hi);
    for (int it = 0; it < 300; ++it) {
        delta = 0.5 * (lo + hi);
        const double value = h(delta);
        if (std::fabs(value - kappa) <= 1e-13 * std::max(1.0, kappa) || hi - lo <= 1e-15 * delta)
            break;
        if (value < kappa)
            lo = delta;
        else
            hi = delta;
    }

    const double sigma = solve_sigma(delta, law);
    const double gamma = gamma_given_sigma(sigma, law);

    SystemSolution sol;
    sol.delta = delta;
    sol.sigma = sigma;
    sol.gamma = gamma;
    sol.kappa = kappa;
    sol.rho = rho;
    sol.residual_delta = delta + rho * gamma / delta - kappa;
    const double positive_part_moment =
        sigma * sigma * law.expect([&](double r) { return f_aux(-r / sigma); });
    sol.residual_sigma = sigma * sigma - positive_part_moment / (delta * delta);
    sol.residual_gamma = gamma - gamma_given_sigma(sigma, law);
    return sol;
}

double x_of(double delta, const GrowthLaw& law) { return -1.0 / solve_sigma(delta, law); }

double x_derivative(double delta, const GrowthLaw& law) {
    const double x = x_of(delta, law);
    const double gamma = law.expect([&](double r) { return q_tail(r * x); });
    const double denom = delta * delta - gamma;
    if (denom <= 0.0)
        throw NumericalError("x_derivative: denominator delta^2 - gamma not positive");
    return delta * x / denom;
}

double gamma_derivative(double delta, const GrowthLaw& law) {
    const double x = x_of(delta, law);
    const double pdf_moment = law.expect([&](double r) { return r * normal_pdf(r * x); });
    return -x_derivative(delta, law) * pdf_moment;
}

}  // namespace lvamp
