#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lvamp/cli.hpp"
#include "lvamp/errors.hpp"
#include "lvamp/experiments.hpp"
#include "lvamp/lcp.hpp"
#include "lvamp/rand_matrix.hpp"
#include "lvamp/rng.hpp"

namespace lvamp {
namespace {

std::string default_output_dir() {
    const char* env = std::getenv("LVAMP_OUTPUT_DIR");
    return env && *env ? env : ".";
}

GrowthLaw law_from_flags(const std::vector<double>& values, std::vector<double> weights) {
    if (weights.empty()) weights.assign(values.size(), 1.0 / static_cast<double>(values.size()));
    if (weights.size() != values.size())
        throw DomainError("growth law: -r and -w counts differ");
    std::vector<GrowthLaw::Atom> atoms;
    double total = 0.0;
    for (double w : weights) total += w;
    for (std::size_t i = 0; i < values.size(); ++i) atoms.push_back({values[i], weights[i] / total});
    return GrowthLaw(std::move(atoms));
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read config file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return ExperimentConfig::from_json(buffer.str());
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv) {
    CLI::App app{"AMP, fixed-point and LCP tools for large Lotka-Volterra systems"};
    app.require_subcommand(1);

    // sample-matrix
    auto* sm = app.add_subcommand("sample-matrix", "Sample an elliptic matrix to CSV");
    std::size_t sm_n = 100;
    double sm_rho = 0.0;
    std::uint64_t sm_seed = 0;
    bool sm_normalized = false, sm_norm = false;
    std::string sm_out;
    sm->add_option("--n", sm_n, "dimension")->required();
    sm->add_option("--rho", sm_rho, "transpose correlation");
    sm->add_option("--seed", sm_seed, "RNG seed")->required();
    sm->add_flag("--normalized", sm_normalized, "divide by sqrt(n)");
    sm->add_flag("--norm", sm_norm, "also report spectral and gate norms");
    sm->add_option("--out", sm_out, "output CSV path (default <outdir>/matrix.csv)");

    // solve-system
    auto* ss = app.add_subcommand("solve-system", "Solve the (delta, sigma, gamma) system");
    double ss_kappa = 2.0, ss_rho = 0.0;
    std::vector<double> ss_r{1.0}, ss_w;
    ss->add_option("--kappa", ss_kappa, "interaction strength")->required();
    ss->add_option("--rho", ss_rho, "transpose correlation")->required();
    ss->add_option("--r", ss_r, "growth-rate atoms");
    ss->add_option("--w", ss_w, "atom weights (default uniform)");

    // equilibrium
    auto* eq = app.add_subcommand("equilibrium", "Sample one system and solve for x*");
    std::size_t eq_n = 200;
    double eq_kappa = 2.0, eq_rho = 0.0;
    std::uint64_t eq_seed = 0;
    std::vector<double> eq_r{1.0}, eq_w;
    eq->add_option("--n", eq_n, "dimension")->required();
    eq->add_option("--kappa", eq_kappa, "interaction strength")->required();
    eq->add_option("--rho", eq_rho, "transpose correlation");
    eq->add_option("--seed", eq_seed, "RNG seed")->required();
    eq->add_option("--r", eq_r, "growth-rate atoms (block values)");
    eq->add_option("--w", eq_w, "block weights (default uniform)");

    // amp-run
    auto* ar = app.add_subcommand("amp-run", "Run the AMP-for-LV pipeline");
    std::string ar_config;
    std::string ar_outdir = default_output_dir();
    ar->add_option("--config", ar_config, "JSON config file")->required();
    ar->add_option("--out-dir", ar_outdir, "output directory");

    // figure
    auto* fig = app.add_subcommand("figure", "Emit CSV data for one paper figure");
    std::string fig_name, fig_config;
    std::string fig_outdir = default_output_dir();
    fig->add_option("name", fig_name, "prop|dist|truncdist|exchangeability")->required();
    fig->add_option("--config", fig_config, "JSON config file")->required();
    fig->add_option("--out-dir", fig_outdir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        nlohmann::json out;
        if (sm->parsed()) {
            const Matrix m = sm_normalized ? sample_normalized_elliptic(sm_n, sm_rho, sm_seed)
                                           : sample_elliptic(sm_n, sm_rho, sm_seed);
            const std::filesystem::path path =
                sm_out.empty() ? std::filesystem::path(default_output_dir()) / "matrix.csv"
                               : std::filesystem::path(sm_out);
            std::ofstream file(path);
            if (!file) throw DomainError("cannot write to " + path.string());
            file.precision(17);
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j)
                    file << m(i, j) << (j + 1 < m.cols() ? ',' : '\n');
            out = {{"n", sm_n}, {"rho", sm_rho}, {"seed", sm_seed}, {"path", path.string()}};
            if (sm_norm) {
                out["spectral_norm"] = spectral_norm(m);
                out["gate_norm"] = symmetrized_norm(m);
            }
        } else if (ss->parsed()) {
            const SystemSolution sol = solve_system(ss_kappa, ss_rho, law_from_flags(ss_r, ss_w));
            out = {{"delta", sol.delta},
                   {"sigma", sol.sigma},
                   {"gamma", sol.gamma},
                   {"kappa", sol.kappa},
                   {"rho", sol.rho},
                   {"residual_delta", sol.residual_delta},
                   {"residual_sigma", sol.residual_sigma},
                   {"residual_gamma", sol.residual_gamma}};
        } else if (eq->parsed()) {
            const GrowthLaw law = law_from_flags(eq_r, eq_w);
            const Matrix A = sample_normalized_elliptic(eq_n, eq_rho, eq_seed);
            Vector r;
            std::vector<double> fractions;
            for (const auto& atom : law.atoms()) fractions.push_back(atom.weight);
            const BlockPartition part = BlockPartition::from_fractions(eq_n, fractions);
            for (std::size_t j = 0; j < part.blocks(); ++j)
                r.insert(r.end(), part.sizes[j], law.atoms()[j].value);
            const EquilibriumResult res = equilibrium(A, eq_kappa, r);
            out = {{"gate_passed", res.gate_passed},
                   {"solver", res.solver},
                   {"survival_fraction", survival_fraction(res.x_star)},
                   {"survival_fraction_eps", survival_fraction(res.x_star, 1e-6)},
                   {"complementarity", res.complementarity},
                   {"feasibility", res.feasibility}};
        } else if (ar->parsed()) {
            ExperimentConfig cfg = load_config(ar_config);
            if (!ar_outdir.empty()) cfg.output_dir = ar_outdir;
            const auto rows = run_amp_lv(cfg);
            std::filesystem::create_directories(cfg.output_dir);
            const std::filesystem::path path =
                std::filesystem::path(cfg.output_dir) / "amp_lv.csv";
            std::ofstream file(path);
            if (!file) throw DomainError("cannot write to " + path.string());
            file.precision(12);
            file << "k,var_u,theta_sq,onsager,survival_proxy,w2\n";
            for (const auto& r : rows)
                file << r.k << ',' << r.var_u << ',' << r.theta_sq << ',' << r.onsager << ','
                     << r.survival_proxy << ',' << r.w2 << '\n';
            out = {{"path", path.string()}, {"iterations", rows.size()}};
        } else if (fig->parsed()) {
            ExperimentConfig cfg = load_config(fig_config);
            if (!fig_outdir.empty()) cfg.output_dir = fig_outdir;
            out = {{"files", run_figure(fig_name, cfg)}};
        }
        std::cout << out.dump(2) << std::endl;
        return 0;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
}

}  // namespace lvamp
