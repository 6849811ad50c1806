#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lvamp/fixed_point.hpp"
#include "lvamp/lv_stats.hpp"

namespace lvamp {

/// One scenario: ensemble parameters, growth-rate atoms (doubling as block
/// definitions for the exchangeability figure), Monte Carlo size and seeds.
struct ExperimentConfig {
    std::string scenario = "default";
    std::size_t n = 200;
    double kappa = 2.0;
    double rho = 0.0;
    std::vector<double> r_values = {1.0};
    std::vector<double> r_weights = {1.0};
    std::size_t replications = 100;
    std::uint64_t seed = 0;
    std::size_t depth = 10;  // AMP iterations K
    std::string output_dir = ".";

    GrowthLaw growth_law() const;
    BlockPartition partition() const;  // blocks proportional to r_weights
    std::string to_json() const;
    static ExperimentConfig from_json(const std::string& text);
    /// FNV-1a hash of the serialized config, for CSV metadata headers.
    std::uint64_t hash() const;
};

/// Per-iteration summary of the section-5.1 AMP-for-LV pipeline.
struct AmpLvRow {
    std::size_t k;
    double var_u;           // empirical second moment of u^k
    double theta_sq;        // DE prediction theta_k^2
    double onsager;         // d_k recorded in the trace
    double survival_proxy;  // <1_{u^k + a > 0}>_n
    double w2;              // W2 of (kappa/delta)(u^k+a)_+ against pi at sigma_k
};

std::vector<AmpLvRow> run_amp_lv(const ExperimentConfig& cfg);

/// Figure pipelines; returns the paths of the CSV files written.
std::vector<std::string> run_figure(const std::string& name, const ExperimentConfig& cfg);

}  // namespace lvamp
