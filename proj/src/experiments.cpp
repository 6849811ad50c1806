#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "lvamp/amp.hpp"
#include "lvamp/density_evolution.hpp"
#include "lvamp/errors.hpp"
#include "lvamp/experiments.hpp"
#include "lvamp/lcp.hpp"
#include "lvamp/rand_matrix.hpp"
#include "lvamp/rng.hpp"

namespace lvamp {
namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const ExperimentConfig& cfg,
              const std::string& header)
        : out_(path) {
        if (!out_) throw DomainError("run_figure: cannot write to " + path.string());
        char meta[160];
        std::snprintf(meta, sizeof meta, "# config_hash=%016llx seed=%llu version=%s",
                      static_cast<unsigned long long>(cfg.hash()),
                      static_cast<unsigned long long>(cfg.seed), kVersion);
        out_ << meta << "\n" << header << "\n";
    }
    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i)
            out_ << (i ? "," : "") << fmt(values[i]);
        out_ << "\n";
    }
    void raw(const std::string& line) { out_ << line << "\n"; }

private:
    std::ofstream out_;
};

// Growth-rate vector with consecutive blocks matching the partition.
Vector growth_vector(const ExperimentConfig& cfg) {
    const BlockPartition part = cfg.partition();
    Vector r;
    r.reserve(part.n());
    for (std::size_t j = 0; j < part.blocks(); ++j)
        r.insert(r.end(), part.sizes[j], cfg.r_values[j]);
    return r;
}

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double standard_error(const std::vector<double>& v) {
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    const auto n = static_cast<double>(v.size());
    return std::sqrt(ss / (n - 1.0) / n);
}

// Freedman-Diaconis histogram of a sorted sample, emitted as rows
// (prefix..., left, right, density).
void histogram(CsvWriter& csv, const std::vector<double>& prefix,
               const EmpiricalMeasure& sample) {
    const auto& v = sample.values;
    const double lo = v.front(), hi = v.back();
    const double iqr = sample.quantile(0.75) - sample.quantile(0.25);
    const auto m = static_cast<double>(v.size());
    double width = 2.0 * iqr / std::cbrt(m);
    if (width <= 0.0) width = (hi - lo > 0.0 ? hi - lo : 1.0);
    const std::size_t bins =
        std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil((hi - lo) / width)), 1, 400);
    const double step = (hi - lo) / static_cast<double>(bins);
    std::vector<std::size_t> counts(bins, 0);
    for (double x : v) {
        auto b = step > 0.0 ? static_cast<std::size_t>((x - lo) / step) : std::size_t{0};
        counts[std::min(b, bins - 1)]++;
    }
    for (std::size_t b = 0; b < bins; ++b) {
        std::vector<double> row = prefix;
        row.push_back(lo + step * static_cast<double>(b));
        row.push_back(lo + step * static_cast<double>(b + 1));
        row.push_back(step > 0.0 ? static_cast<double>(counts[b]) / (m * step) : 0.0);
        csv.row(row);
    }
}

std::vector<double> kappa_grid(double rho) {
    // Paper figure leaves the grid open; default [sqrt(2(1+rho))+0.05, 5] in
    // 25 steps, recorded in metadata via the config hash.
    const double start = std::sqrt(2.0 * (1.0 + rho)) + 0.05;
    std::vector<double> grid(25);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = start + (5.0 - start) * static_cast<double>(i) / 24.0;
    return grid;
}

}  // namespace

GrowthLaw ExperimentConfig::growth_law() const {
    if (r_values.size() != r_weights.size() || r_values.empty())
        throw DomainError("ExperimentConfig: r_values and r_weights must match and be non-empty");
    const double total = std::accumulate(r_weights.begin(), r_weights.end(), 0.0);
    std::vector<GrowthLaw::Atom> atoms;
    for (std::size_t i = 0; i < r_values.size(); ++i)
        atoms.push_back({r_values[i], r_weights[i] / total});
    return GrowthLaw(std::move(atoms));
}

BlockPartition ExperimentConfig::partition() const {
    const double total = std::accumulate(r_weights.begin(), r_weights.end(), 0.0);
    std::vector<double> fractions;
    for (double w : r_weights) fractions.push_back(w / total);
    return BlockPartition::from_fractions(n, fractions);
}

std::string ExperimentConfig::to_json() const {
    nlohmann::json j{{"scenario", scenario}, {"n", n},
                     {"kappa", kappa},       {"rho", rho},
                     {"r_values", r_values}, {"r_weights", r_weights},
                     {"replications", replications},
                     {"seed", seed},         {"depth", depth},
                     {"output_dir", output_dir}};
    return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(std::string("ExperimentConfig: invalid JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        cfg.scenario = j.value("scenario", cfg.scenario);
        cfg.n = j.value("n", cfg.n);
        cfg.kappa = j.value("kappa", cfg.kappa);
        cfg.rho = j.value("rho", cfg.rho);
        cfg.r_values = j.value("r_values", cfg.r_values);
        cfg.r_weights = j.value("r_weights", cfg.r_weights);
        cfg.replications = j.value("replications", cfg.replications);
        cfg.seed = j.value("seed", cfg.seed);
        cfg.depth = j.value("depth", cfg.depth);
        cfg.output_dir = j.value("output_dir", cfg.output_dir);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("ExperimentConfig: bad field type: ") + e.what());
    }
    if (cfg.n == 0 || cfg.replications == 0 || cfg.depth == 0 || cfg.kappa <= 0.0)
        throw DomainError("ExperimentConfig: numeric fields out of domain");
    return cfg;
}

std::uint64_t ExperimentConfig::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char c : to_json()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::vector<AmpLvRow> run_amp_lv(const ExperimentConfig& cfg) {
    const GrowthLaw law = cfg.growth_law();
    const SystemSolution sol = solve_system(cfg.kappa, cfg.rho, law);
    const double scale = cfg.kappa / sol.delta;

    const Vector r = growth_vector(cfg);
    const std::size_t n = cfg.n;
    Matrix B(n, 1);
    for (std::size_t i = 0; i < n; ++i) B(i, 0) = scale * r[i];

    const CounterRng master(cfg.seed, rng_stream::kReplication);
    const Matrix A = sample_normalized_elliptic(n, cfg.rho, master.derive(0));
    const Vector u0(n, 1.0);
    const AMPTrace trace = amp_run(A, B, u0, lv_activation(sol.delta), cfg.rho, cfg.depth);

    const ScalarDE de = de_scalar_lv(sol.delta, law.scaled(scale), cfg.depth);
    const std::vector<double> sigmas = sigma_sequence(de.theta, sol.delta, cfg.kappa);

    std::vector<AmpLvRow> rows;
    for (std::size_t k = 1; k <= cfg.depth; ++k) {
        const Vector& u = trace.u[k - 1];
        double second = 0.0;
        std::size_t alive = 0;
        std::vector<double> abundance(n);
        for (std::size_t i = 0; i < n; ++i) {
            second += u[i] * u[i];
            // z_+^k = (u^k + a)_+ already carries the kappa/delta factor
            // through a; its law is pi at sigma_k.
            const double v = u[i] + B(i, 0);
            if (v > 0.0) ++alive;
            abundance[i] = v > 0.0 ? v : 0.0;
        }
        SystemSolution sol_k = sol;
        sol_k.sigma = sigmas[k - 1];
        const Vector pi = pi_sample({sol_k, law}, std::max<std::size_t>(n, 20000),
                                    master.derive(1000 + k));
        AmpLvRow row;
        row.k = k;
        row.var_u = second / static_cast<double>(n);
        row.theta_sq = de.theta[k - 1] * de.theta[k - 1];
        row.onsager = trace.d[k - 1];
        row.survival_proxy = static_cast<double>(alive) / static_cast<double>(n);
        row.w2 = wasserstein2_1d(EmpiricalMeasure(std::move(abundance)), EmpiricalMeasure(pi));
        rows.push_back(row);
    }
    return rows;
}

std::vector<std::string> run_figure(const std::string& name, const ExperimentConfig& cfg) {
    namespace fs = std::filesystem;
    const fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);

    const GrowthLaw law = cfg.growth_law();
    const CounterRng master(cfg.seed, rng_stream::kReplication);
    std::vector<std::string> written;

    const auto replicate = [&](double kappa, double rho, std::uint64_t salt,
                               const auto& consume) {
        for (std::size_t rep = 0; rep < cfg.replications; ++rep) {
            const Matrix A =
                sample_normalized_elliptic(cfg.n, rho, master.derive(salt + rep));
            consume(equilibrium(A, kappa, growth_vector(cfg)));
        }
    };

    if (name == "prop") {
        CsvWriter csv(dir / "prop.csv", cfg, "kappa,rho,gamma_theory,gamma_mc_mean,gamma_mc_se");
        std::uint64_t salt = 0;
        for (double rho : {-0.7, 0.0, 0.4}) {
            for (double kappa : kappa_grid(rho)) {
                std::vector<double> fractions;
                replicate(kappa, rho, salt, [&](const EquilibriumResult& eq) {
                    fractions.push_back(survival_fraction(eq.x_star));
                });
                salt += cfg.replications;
                csv.row({kappa, rho, solve_system(kappa, rho, law).gamma, mean(fractions),
                         standard_error(fractions)});
            }
        }
        written.push_back((dir / "prop.csv").string());
    } else if (name == "dist") {
        const SystemSolution sol = solve_system(cfg.kappa, cfg.rho, law);
        const LimitLaw limit{sol, law};
        std::vector<double> pooled;
        replicate(cfg.kappa, cfg.rho, 0, [&](const EquilibriumResult& eq) {
            for (double v : eq.x_star)
                if (v > 0.0) pooled.push_back(v);
        });
        CsvWriter hist(dir / "dist_hist.csv", cfg, "bin_left,bin_right,density");
        histogram(hist, {}, EmpiricalMeasure(std::move(pooled)));
        CsvWriter curve(dir / "dist_curve.csv", cfg, "y,f_surv");
        const double ymax = limit.scale() * (law.atoms().back().value + 4.0 * sol.sigma);
        for (int i = 0; i <= 300; ++i) {
            const double y = ymax * i / 300.0;
            curve.row({y, f_surv_density(limit, y)});
        }
        written.push_back((dir / "dist_hist.csv").string());
        written.push_back((dir / "dist_curve.csv").string());
    } else if (name == "truncdist") {
        CsvWriter curve(dir / "truncdist.csv", cfg, "rho,y,f_surv");
        for (double rho : {-0.7, 0.0, 0.4}) {
            const SystemSolution sol = solve_system(cfg.kappa, rho, law);
            const LimitLaw limit{sol, law};
            const double ymax = limit.scale() * (law.atoms().back().value + 4.0 * sol.sigma);
            for (int i = 0; i <= 300; ++i) {
                const double y = ymax * i / 300.0;
                curve.row({rho, y, f_surv_density(limit, y)});
            }
        }
        written.push_back((dir / "truncdist.csv").string());
    } else if (name == "exchangeability") {
        const BlockPartition part = cfg.partition();
        const SystemSolution sol = solve_system(cfg.kappa, cfg.rho, law);
        const LimitLaw limit{sol, law};
        const std::size_t q = part.blocks();
        std::vector<std::vector<double>> fractions(q);
        std::vector<std::vector<double>> pooled(q);
        replicate(cfg.kappa, cfg.rho, 0, [&](const EquilibriumResult& eq) {
            const auto stats = block_statistics(eq.x_star, part);
            for (std::size_t j = 0; j < q; ++j) {
                fractions[j].push_back(stats[j].survival);
                for (double v : stats[j].positives.values)
                    if (v > 0.0) pooled[j].push_back(v);
            }
        });
        CsvWriter blocks(dir / "exch_blocks.csv", cfg,
                         "block,r,c,gamma_theory,survival_mc_mean,survival_mc_se");
        CsvWriter hist(dir / "exch_hist.csv", cfg, "block,bin_left,bin_right,density");
        CsvWriter curve(dir / "exch_curve.csv", cfg, "block,y,f_surv_block,f_surv_mixture");
        for (std::size_t j = 0; j < q; ++j) {
            const GrowthLaw block_law = GrowthLaw::constant(cfg.r_values[j]);
            blocks.row({static_cast<double>(j), cfg.r_values[j], part.proportion(j),
                        gamma_block(limit, block_law), mean(fractions[j]),
                        standard_error(fractions[j])});
            histogram(hist, {static_cast<double>(j)}, EmpiricalMeasure(pooled[j]));
            const double ymax = limit.scale() * (cfg.r_values[j] + 4.0 * sol.sigma);
            for (int i = 0; i <= 200; ++i) {
                const double y = ymax * i / 200.0;
                curve.row({static_cast<double>(j), y, f_surv_block(limit, block_law, y),
                           f_surv_density(limit, y)});
            }
        }
        written.push_back((dir / "exch_blocks.csv").string());
        written.push_back((dir / "exch_hist.csv").string());
        written.push_back((dir / "exch_curve.csv").string());
    } else {
        throw DomainError("run_figure: unknown figure name '" + name + "'");
    }
    return written;
}

}  // namespace lvamp
