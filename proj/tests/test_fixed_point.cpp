#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lvamp/fixed_point.hpp"
#include "lvamp/quadrature.hpp"
#include "lvamp/rng.hpp"
#include "oracles.hpp"

using namespace lvamp;

namespace {
const GrowthLaw kUnit = GrowthLaw::constant(1.0);
}

TEST_CASE("growth law validation") {
    CHECK_THROWS_AS(GrowthLaw({}), DomainError);
    CHECK_THROWS_AS(GrowthLaw({{-0.5, 1.0}}), DomainError);
    CHECK_THROWS_AS(GrowthLaw({{1.0, 0.0}}), DomainError);
    CHECK_THROWS_AS(GrowthLaw({{1.0, 0.6}, {2.0, 0.6}}), DomainError);
    CHECK_THROWS_AS(GrowthLaw({{0.0, 1.0}}), DomainError);  // the point mass at 0
    const GrowthLaw two({{1.0, 0.5}, {3.0, 0.5}});
    CHECK(two.second_moment() == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(two.scaled(2.0).atoms()[1].value == doctest::Approx(6.0));
    CHECK_THROWS_AS(two.scaled(-1.0), DomainError);
}

TEST_CASE("q_tail values and reflection identity") {
    CHECK(q_tail(0.0) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(q_tail(10.0) < 1e-22);
    for (double x : {0.3, 1.7, -2.5})
        CHECK(q_tail(x) + q_tail(-x) == doctest::Approx(1.0).epsilon(1e-12));
    // against a plain integral of the density
    const double direct = oracles::simpson(oracles::normal_pdf, 1.3, 14.0, 20000);
    CHECK(q_tail(1.3) == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("f_aux values, derivative, asymptote") {
    CHECK(f_aux(0.0) == doctest::Approx(0.5).epsilon(1e-13));
    for (double x : {-2.0, -0.5, 1.0}) {
        const double fd = oracles::central_difference(f_aux, x, 1e-5);
        CHECK(f_aux_prime(x) == doctest::Approx(fd).epsilon(1e-6));
    }
    const double expected = 65.0 * q_tail(-8.0) + 8.0 * normal_pdf(8.0);
    CHECK(f_aux(-8.0) == doctest::Approx(expected).epsilon(1e-6));
    // the identity behind everything: E(sigma Z + r)_+^2 = sigma^2 f(-r/sigma)
    for (double sigma : {0.5, 1.0, 2.0})
        for (double r : {0.3, 1.0, 3.0})
            CHECK(sigma * sigma * f_aux(-r / sigma) ==
                  doctest::Approx(oracles::positive_square_moment(sigma, r)).epsilon(1e-9));
}

TEST_CASE("solve_sigma against the damped fixed-point oracle") {
    const double sigma = solve_sigma(2.0, kUnit);
    CHECK(2.0 * 2.0 == doctest::Approx(f_aux(-1.0 / sigma)).epsilon(1e-12));
    CHECK(std::fabs(sigma - oracles::solve_sigma_picard(2.0, kUnit)) < 1e-8);

    // sigma grows without bound as delta drops toward 1/sqrt(2)
    double prev = solve_sigma(0.7072, kUnit);
    CHECK(solve_sigma(0.708, kUnit) < prev);
    CHECK(solve_sigma(0.71, kUnit) < solve_sigma(0.708, kUnit));
    CHECK(prev > 50.0);

    CHECK_THROWS_AS(solve_sigma(0.5, kUnit), DomainError);
    CHECK_THROWS_AS(solve_sigma(1.0 / std::sqrt(2.0), kUnit), DomainError);
}

TEST_CASE("gamma_of: range, paper inequality, Monte Carlo") {
    const double sigma = solve_sigma(2.0, kUnit);
    CHECK(gamma_of(2.0, kUnit) == doctest::Approx(q_tail(-1.0 / sigma)).epsilon(1e-12));
    CHECK(gamma_of(2.0, kUnit) > 0.5);
    CHECK(gamma_of(2.0, kUnit) < 1.0);

    for (double d : {0.8, 1.0, 2.0, 5.0}) CHECK(gamma_of(d, kUnit) < d * d);

    const GrowthLaw two({{1.0, 0.5}, {3.0, 0.5}});
    const double g = gamma_of(2.0, two);
    const double s = solve_sigma(2.0, two);
    CounterRng rng(424242, 0);
    const std::size_t m = 2000000;
    std::size_t alive = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = rng.uniform(3 * i) < 0.5 ? 1.0 : 3.0;
        if (s * rng.normal(m + i) + r > 0.0) ++alive;
    }
    const double mc = static_cast<double>(alive) / static_cast<double>(m);
    const double se = std::sqrt(g * (1.0 - g) / static_cast<double>(m));
    CHECK(std::fabs(mc - g) < 3.0 * se);
}

TEST_CASE("solve_system: exactness at rho=0 and oracle agreement") {
    for (double kappa : {1.5, 2.0, 3.0}) {
        const SystemSolution sol = solve_system(kappa, 0.0, kUnit);
        CHECK(std::fabs(sol.delta - kappa) <= 1e-10);
        CHECK(std::fabs(sol.residual_delta) <= 1e-8);
        CHECK(std::fabs(sol.residual_sigma) <= 1e-8);
        CHECK(std::fabs(sol.residual_gamma) <= 1e-8);
    }
    for (double rho : {-0.7, 0.0, 0.4}) {
        const SystemSolution sol = solve_system(2.0, rho, kUnit);
        const auto oracle = oracles::solve_system_picard(2.0, rho, kUnit);
        CHECK(std::fabs(sol.delta - oracle.delta) < 1e-6);
        CHECK(std::fabs(sol.sigma - oracle.sigma) < 1e-6);
        CHECK(std::fabs(sol.gamma - oracle.gamma) < 1e-6);
        // Remark 3.5 identity
        CHECK(1.0 + rho * sol.gamma / (sol.delta * sol.delta) ==
              doctest::Approx(sol.kappa / sol.delta).epsilon(1e-10));
    }
    CHECK_THROWS_AS(solve_system(1.4 / std::sqrt(2.0), 0.4, kUnit), DomainError);
    CHECK_THROWS_AS(solve_system(2.0, 1.5, kUnit), DomainError);
}

TEST_CASE("h monotone increasing, sigma decreasing on the grid") {
    for (double rho : {-1.0, -0.7, 0.0, 0.4, 1.0}) {
        double prev_h = -1e300;
        for (int i = 0; i < 100; ++i) {
            const double d = 1.0 / std::sqrt(2.0) + 1e-3 + (6.0 - 1.0 / std::sqrt(2.0)) * i / 99.0;
            const double h = d + rho * gamma_of(d, kUnit) / d;
            CHECK(h > prev_h);
            prev_h = h;
        }
    }
    double prev_sigma = 1e300;
    for (int i = 0; i < 100; ++i) {
        const double d = 1.0 / std::sqrt(2.0) + 1e-3 + (6.0 - 1.0 / std::sqrt(2.0)) * i / 99.0;
        const double s = solve_sigma(d, kUnit);
        CHECK(s < prev_sigma);
        prev_sigma = s;
    }
}

TEST_CASE("analytic derivatives match finite differences") {
    for (double d : {0.8, 1.5, 3.0}) {
        const auto x_fn = [&](double dd) { return x_of(dd, kUnit); };
        const auto g_fn = [&](double dd) { return gamma_of(dd, kUnit); };
        const double xd = x_derivative(d, kUnit);
        const double gd = gamma_derivative(d, kUnit);
        CHECK(std::fabs(xd - oracles::central_difference(x_fn, d, 1e-5)) <
              1e-5 * std::fabs(xd));
        CHECK(std::fabs(gd - oracles::central_difference(g_fn, d, 1e-5)) <
              1e-4 * std::max(std::fabs(gd), 1e-3));
        CHECK(gd < d);   // Lemma A.1
        CHECK(xd < 0.0);
    }
}

TEST_CASE("gauss-hermite rule sanity") {
    for (std::size_t order : {64u, 128u}) {
        const auto& rule = quad::gauss_hermite(order);
        double w = 0.0, m2 = 0.0, m4 = 0.0;
        for (std::size_t i = 0; i < order; ++i) {
            w += rule.weights[i];
            m2 += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
            m4 += rule.weights[i] * std::pow(rule.nodes[i], 4);
        }
        CHECK(w == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(m2 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(m4 == doctest::Approx(3.0).epsilon(1e-12));
    }
    // kinked integrand resolved by the adaptive fallback
    const double v = quad::expect_normal([](double z) {
        const double t = 0.7 * z + 0.4;
        return t > 0.0 ? t * t : 0.0;
    });
    CHECK(v == doctest::Approx(0.7 * 0.7 * f_aux(-0.4 / 0.7)).epsilon(1e-9));
    CHECK(quad::adaptive_simpson([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-12) ==
          doctest::Approx(2.0).epsilon(1e-11));
}
