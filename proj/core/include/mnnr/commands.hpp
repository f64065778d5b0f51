#pragma once

#include "mnnr/analytic.hpp"
#include "mnnr/config.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mnnr {

/// Version string written into every output header.
std::string tool_version();

/// One cooperation scheme at one exclusion radius.
struct SchemeColumn {
    CooperationScheme scheme;
    double mc_mean = 0.0;
    double mc_std_error = 0.0;
    double quadrature = 0.0;        // truncated at the observation radius
    double quadrature_plane = 0.0;  // whole plane
};

struct InterferenceRow {
    double exclusion_radius = 0.0;
    double singles_mc_mean = 0.0;
    double singles_mc_std_error = 0.0;
    double singles_quadrature = 0.0;
    double singles_quadrature_plane = 0.0;
    double singles_closed_form = 0.0;  // truncated at the observation radius
    std::vector<SchemeColumn> pairs;
};

struct InterferenceTable {
    double beta = 0.0;
    double observation_radius = 0.0;
    std::size_t replications = 0;
    std::vector<InterferenceRow> rows;
};

struct InterferenceSamples {
    std::vector<InterferenceSample> samples;  // config.scheme at config.exclusion_radius
};

/// Monte Carlo and quadrature expected interference for every R in
/// config.r_grid, every scheme in config.schemes and every beta in `betas`.
/// The observer sits at the window centre; only atoms within the observation
/// radius contribute, and the quadrature is truncated the same way.
std::vector<InterferenceTable> interference_study(const ExperimentConfig& config,
                                                  std::span<const double> betas,
                                                  InterferenceSamples* samples = nullptr);

struct LaplaceComparison {
    Window window;
    LaplaceSeries singles;
    LaplaceSeries pairs;
    std::vector<LaplacePoint> empirical_singles;
    std::vector<LaplacePoint> empirical_pairs;
    std::size_t empirical_replications = 0;
};

/// Series and empirical Laplace transforms on config.laplace_window(), with
/// the observer at its centre and grouping done inside the window only.
LaplaceComparison laplace_study(const ExperimentConfig& config);

void cmd_sample(const ExperimentConfig& config);
void cmd_stats(const ExperimentConfig& config);
void cmd_interference(const ExperimentConfig& config);
void cmd_laplace(const ExperimentConfig& config);

/// Valid ids for cmd_reproduce.
std::vector<std::string> figure_ids();

/// Canned configuration for a figure. Throws ConfigError listing the valid
/// ids if `id` is unknown.
ExperimentConfig figure_config(std::string_view id);

/// Runs the figure's experiment with `config` (normally figure_config(id)
/// plus user overrides) and writes plot-ready CSV into config.out.
void cmd_reproduce(std::string_view id, const ExperimentConfig& config);

}  // namespace mnnr
