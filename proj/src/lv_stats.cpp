#include <algorithm>
#include <cmath>
#include <numeric>

#include "lvamp/errors.hpp"
#include "lvamp/lv_stats.hpp"
#include "lvamp/rng.hpp"

namespace lvamp {

BlockPartition::BlockPartition(std::vector<std::size_t> sizes_in) : sizes(std::move(sizes_in)) {
    if (sizes.empty()) throw DomainError("BlockPartition: no blocks");
    for (std::size_t s : sizes)
        if (s == 0) throw DomainError("BlockPartition: empty block");
}

BlockPartition BlockPartition::from_fractions(std::size_t n, const std::vector<double>& fractions) {
    if (n == 0 || fractions.empty()) throw DomainError("BlockPartition: empty input");
    double total = 0.0;
    for (double f : fractions) {
        if (f <= 0.0) throw DomainError("BlockPartition: fractions must be positive");
        total += f;
    }
    if (std::fabs(total - 1.0) > 1e-9) throw DomainError("BlockPartition: fractions must sum to 1");

    // Largest-remainder rounding so the sizes sum to n exactly.
    const std::size_t q = fractions.size();
    std::vector<std::size_t> sizes(q);
    std::vector<std::pair<double, std::size_t>> remainders(q);
    std::size_t assigned = 0;
    for (std::size_t j = 0; j < q; ++j) {
        const double exact = fractions[j] * static_cast<double>(n);
        sizes[j] = static_cast<std::size_t>(std::floor(exact));
        remainders[j] = {exact - std::floor(exact), j};
        assigned += sizes[j];
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    for (std::size_t i = 0; assigned < n; ++i, ++assigned) ++sizes[remainders[i % q].second];
    return BlockPartition(std::move(sizes));
}

std::size_t BlockPartition::n() const {
    return std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
}

double BlockPartition::proportion(std::size_t j) const {
    if (j >= sizes.size()) throw DimensionError("BlockPartition: block index out of range");
    return static_cast<double>(sizes[j]) / static_cast<double>(n());
}

EmpiricalMeasure::EmpiricalMeasure(std::vector<double> sample) : values(std::move(sample)) {
    if (values.empty()) throw DomainError("EmpiricalMeasure: empty sample");
    for (double v : values)
        if (!std::isfinite(v)) throw DomainError("EmpiricalMeasure: non-finite sample value");
    std::sort(values.begin(), values.end());
}

double EmpiricalMeasure::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("EmpiricalMeasure::quantile: p outside (0,1)");
    const std::size_t idx =
        std::min(static_cast<std::size_t>(p * static_cast<double>(values.size())),
                 values.size() - 1);
    return values[idx];
}

Vector pi_sample(const LimitLaw& law, std::size_t m, std::uint64_t seed) {
    if (m < 1) throw DomainError("pi_sample: m must be >= 1");
    const CounterRng rng(seed, rng_stream::kLimitLawSample);
    const double s = law.scale();
    Vector out(m);
    for (std::size_t i = 0; i < m; ++i) {
        // atom pick by inverse CDF over weights, then the Gaussian part
        double u = rng.uniform(2 * i);
        double r = law.law.atoms().back().value;
        for (const auto& atom : law.law.atoms()) {
            if (u < atom.weight) {
                r = atom.value;
                break;
            }
            u -= atom.weight;
        }
        const double v = law.sol.sigma * rng.normal(2 * i + 1) + r;
        out[i] = v > 0.0 ? s * v : 0.0;
    }
    return out;
}

double f_surv_density(const LimitLaw& law, double y) {
    return f_surv_block(law, law.law, y) * gamma_block(law, law.law) / law.sol.gamma;
}

double f_surv_block(const LimitLaw& global, const GrowthLaw& block_law, double y) {
    if (y <= 0.0) return 0.0;
    const double sigma = global.sol.sigma;
    const double inv_scale = 1.0 / global.scale();
    const double z = y * inv_scale;
    double density = 0.0;
    for (const auto& atom : block_law.atoms())
        density += atom.weight * normal_pdf((z - atom.value) / sigma) / sigma;
    return inv_scale * density / gamma_block(global, block_law);
}

double gamma_block(const LimitLaw& global, const GrowthLaw& block_law) {
    return gamma_given_sigma(global.sol.sigma, block_law);
}

double survival_fraction(const Vector& x_star, double eps) {
    if (x_star.empty()) throw DomainError("survival_fraction: empty vector");
    if (eps < 0.0) throw DomainError("survival_fraction: eps must be nonnegative");
    std::size_t count = 0;
    for (double v : x_star)
        if (v > eps) ++count;
    return static_cast<double>(count) / static_cast<double>(x_star.size());
}

double wasserstein2_1d(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
    const std::size_t m = std::max(a.size(), b.size());
    double s = 0.0;
    if (a.size() == b.size()) {
        for (std::size_t i = 0; i < m; ++i) {
            const double d = a.values[i] - b.values[i];
            s += d * d;
        }
    } else {
        for (std::size_t i = 0; i < m; ++i) {
            const double p = (static_cast<double>(i) + 0.5) / static_cast<double>(m);
            const double d = a.quantile(p) - b.quantile(p);
            s += d * d;
        }
    }
    return std::sqrt(s / static_cast<double>(m));
}

std::vector<BlockSummary> block_statistics(const Vector& x_star, const BlockPartition& part) {
    if (part.n() != x_star.size())
        throw DimensionError("block_statistics: partition size differs from vector length");
    std::vector<BlockSummary> out;
    std::size_t offset = 0;
    for (std::size_t nj : part.sizes) {
        std::vector<double> positives;
        std::size_t count = 0;
        for (std::size_t i = offset; i < offset + nj; ++i)
            if (x_star[i] > 0.0) {
                positives.push_back(x_star[i]);
                ++count;
            }
        if (positives.empty()) positives.push_back(0.0);  // keep the measure non-empty
        out.push_back({static_cast<double>(count) / static_cast<double>(nj),
                       EmpiricalMeasure(std::move(positives))});
        offset += nj;
    }
    return out;
}

}  // namespace lvamp
