#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lvamp/lv_stats.hpp"
#include "lvamp/quadrature.hpp"
#include "lvamp/rng.hpp"
#include "oracles.hpp"

using namespace lvamp;

namespace {

LimitLaw make_limit(double kappa, double rho, const GrowthLaw& law) {
    return {solve_system(kappa, rho, law), law};
}

}  // namespace

TEST_CASE("block partition: validation and largest-remainder rounding") {
    CHECK_THROWS_AS(BlockPartition({}), DomainError);
    CHECK_THROWS_AS(BlockPartition({3, 0}), DomainError);

    const BlockPartition part = BlockPartition::from_fractions(500, {0.5, 0.3, 0.2});
    CHECK(part.sizes == std::vector<std::size_t>{250, 150, 100});
    CHECK(part.n() == 500);
    CHECK(part.proportion(0) == doctest::Approx(0.5));

    // n not divisible: sizes still sum to n
    const BlockPartition odd = BlockPartition::from_fractions(101, {0.5, 0.3, 0.2});
    CHECK(odd.n() == 101);
    CHECK_THROWS_AS(BlockPartition::from_fractions(10, {0.5, 0.4}), DomainError);
}

TEST_CASE("empirical measure and quantiles") {
    CHECK_THROWS_AS(EmpiricalMeasure({}), DomainError);
    const EmpiricalMeasure em({3.0, 1.0, 2.0});
    CHECK(em.values == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(em.quantile(0.1) == 1.0);
    CHECK(em.quantile(0.5) == 2.0);
    CHECK(em.quantile(0.99) == 3.0);
}

TEST_CASE("limit law scale equals the Remark 3.5 identity") {
    for (double rho : {-0.7, 0.0, 0.4}) {
        const LimitLaw law = make_limit(2.0, rho, GrowthLaw::constant(1.0));
        const double identity = 1.0 + rho * law.sol.gamma / (law.sol.delta * law.sol.delta);
        CHECK(law.scale() == doctest::Approx(identity).epsilon(1e-10));
    }
}

TEST_CASE("pi_sample: degenerate limit, zero mass, mixture") {
    GrowthLaw unit = GrowthLaw::constant(1.0);
    LimitLaw degenerate = make_limit(2.0, 0.0, unit);
    degenerate.sol.sigma = 1e-12;
    degenerate.sol.kappa = degenerate.sol.delta;  // scale 1
    for (double v : pi_sample(degenerate, 100, 3)) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));

    const LimitLaw law = make_limit(2.0, 0.4, unit);
    const std::size_t m = 1000000;
    const Vector sample = pi_sample(law, m, 42);
    std::size_t zeros = 0;
    for (double v : sample)
        if (v == 0.0) ++zeros;
    const double zero_frac = static_cast<double>(zeros) / m;
    const double g = law.sol.gamma;
    const double se = std::sqrt(g * (1.0 - g) / m);
    CHECK(std::fabs(zero_frac - (1.0 - g)) < 3.0 * se);

    // two-atom mixture: conditional means of the positive part differ by atom
    const GrowthLaw two({{1.0, 0.5}, {6.0, 0.5}});
    const LimitLaw mix = make_limit(2.0, 0.0, two);
    const Vector ms = pi_sample(mix, 200000, 9);
    // atoms are well separated: split at the density minimum between them
    const double split = mix.scale() * 3.5;
    std::size_t low = 0, high = 0;
    for (double v : ms) {
        if (v > 0.0 && v < split) ++low;
        if (v >= split) ++high;
    }
    const double frac_high = static_cast<double>(high) / ms.size();
    const double expected_high = 0.5 * q_tail(-6.0 / mix.sol.sigma);
    CHECK(std::fabs(frac_high - expected_high) < 0.005);
    CHECK(low > 0);
}

TEST_CASE("f_surv density: support, normalization, truncated-gaussian shape") {
    const LimitLaw law = make_limit(2.0, 0.4, GrowthLaw::constant(1.0));
    CHECK(f_surv_density(law, 0.0) == 0.0);
    CHECK(f_surv_density(law, -1.0) == 0.0);
    CHECK(f_surv_density(law, 1.0) > 0.0);

    const double upper = 20.0 * law.sol.sigma * law.scale();
    const double mass = quad::adaptive_simpson([&](double y) { return f_surv_density(law, y); },
                                               1e-12, upper, 1e-9);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("blockwise densities: mixture identity and gamma ordering") {
    const GrowthLaw global({{1.0, 0.5}, {3.0, 0.3}, {6.0, 0.2}});
    const LimitLaw law = make_limit(2.0, 0.0, global);
    const std::vector<double> values = {1.0, 3.0, 6.0};
    const std::vector<double> weights = {0.5, 0.3, 0.2};

    double gamma_mix = 0.0;
    for (std::size_t j = 0; j < 3; ++j)
        gamma_mix += weights[j] * gamma_block(law, GrowthLaw::constant(values[j]));
    CHECK(gamma_mix / law.sol.gamma == doctest::Approx(1.0).epsilon(1e-10));

    for (double y : {0.5, 1.0, 2.0}) {
        double mixture = 0.0;
        for (std::size_t j = 0; j < 3; ++j) {
            const GrowthLaw bl = GrowthLaw::constant(values[j]);
            mixture += weights[j] * gamma_block(law, bl) / law.sol.gamma *
                       f_surv_block(law, bl, y);
        }
        CHECK(f_surv_density(law, y) == doctest::Approx(mixture).epsilon(1e-10));
    }

    const double g1 = gamma_block(law, GrowthLaw::constant(1.0));
    const double g3 = gamma_block(law, GrowthLaw::constant(3.0));
    const double g6 = gamma_block(law, GrowthLaw::constant(6.0));
    CHECK(g1 < g3);
    CHECK(g3 < g6);

    // single block reduces to the global density
    const LimitLaw single = make_limit(2.0, 0.0, GrowthLaw::constant(1.0));
    CHECK(f_surv_block(single, single.law, 0.8) ==
          doctest::Approx(f_surv_density(single, 0.8)).epsilon(1e-12));
}

TEST_CASE("survival_fraction") {
    CHECK(survival_fraction({0.0, 0.0, 0.0}) == 0.0);
    CHECK(survival_fraction({0.0, 1.0, 2.0, 0.0}) == 0.5);
    CHECK(survival_fraction({1e-7, 1.0}, 1e-6) == 0.5);
    CHECK_THROWS_AS(survival_fraction({}), DomainError);
    CHECK_THROWS_AS(survival_fraction({1.0}, -0.1), DomainError);
}

TEST_CASE("wasserstein2_1d examples and metric axioms") {
    const EmpiricalMeasure a({0.0, 2.0}), b({1.0, 3.0});
    CHECK(wasserstein2_1d(a, a) == 0.0);
    CHECK(wasserstein2_1d(EmpiricalMeasure({0.0}), EmpiricalMeasure({3.0})) == 3.0);
    CHECK(wasserstein2_1d(a, b) == doctest::Approx(1.0).epsilon(1e-14));

    // sorted coupling is optimal: brute force over all pairings
    CounterRng rng(77, 0);
    for (int t = 0; t < 20; ++t) {
        std::vector<double> xs(5), ys(5);
        for (int i = 0; i < 5; ++i) {
            xs[i] = rng.normal(100 * t + i);
            ys[i] = rng.normal(100 * t + 50 + i);
        }
        const EmpiricalMeasure ex(xs), ey(ys);
        CHECK(wasserstein2_1d(ex, ey) ==
              doctest::Approx(oracles::w2_brute_force(ex.values, ey.values)).epsilon(1e-12));
    }

    // metric axioms on random triples
    for (int t = 0; t < 10; ++t) {
        std::vector<double> xs(8), ys(8), zs(8);
        for (int i = 0; i < 8; ++i) {
            xs[i] = rng.normal(1000 + 30 * t + i);
            ys[i] = rng.normal(2000 + 30 * t + i);
            zs[i] = rng.normal(3000 + 30 * t + i);
        }
        const EmpiricalMeasure ex(xs), ey(ys), ez(zs);
        const double dxy = wasserstein2_1d(ex, ey);
        const double dyx = wasserstein2_1d(ey, ex);
        CHECK(dxy == doctest::Approx(dyx).epsilon(1e-12));
        CHECK(wasserstein2_1d(ex, ex) <= 1e-12);
        CHECK(dxy <= wasserstein2_1d(ex, ez) + wasserstein2_1d(ez, ey) + 1e-12);
    }

    // unequal sizes via the common quantile grid
    const EmpiricalMeasure small({0.0, 1.0});
    const EmpiricalMeasure big({0.0, 0.0, 1.0, 1.0});
    CHECK(wasserstein2_1d(small, big) <= 0.51);
}

TEST_CASE("block statistics") {
    const Vector x = {1.0, 0.0, 2.0, 0.0, 0.0, 3.0};
    const BlockPartition part({3, 3});
    const auto stats = block_statistics(x, part);
    CHECK(stats.size() == 2);
    CHECK(stats[0].survival == doctest::Approx(2.0 / 3.0));
    CHECK(stats[1].survival == doctest::Approx(1.0 / 3.0));
    CHECK(stats[0].positives.values == std::vector<double>{1.0, 2.0});

    // q = 1 equals the global survival fraction
    const auto global = block_statistics(x, BlockPartition({6}));
    CHECK(global[0].survival == survival_fraction(x));

    // permuting within a block leaves its statistics unchanged
    const Vector shuffled = {2.0, 1.0, 0.0, 3.0, 0.0, 0.0};
    const auto stats2 = block_statistics(shuffled, part);
    CHECK(stats2[0].survival == stats[0].survival);
    CHECK(stats2[0].positives.values == stats[0].positives.values);

    CHECK_THROWS_AS(block_statistics(x, BlockPartition({4, 3})), DimensionError);
}
