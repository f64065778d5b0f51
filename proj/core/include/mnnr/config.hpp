#pragma once

#include "mnnr/geometry.hpp"
#include "mnnr/signal_model.hpp"
#include "mnnr/statistics.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mnnr {

/// Invalid configuration key or value.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Full description of a reproducible run.
///
/// Config files are flat `key = value` text; `#` starts a comment. Lists are
/// comma separated. `auto` restores a derived default where one exists.
struct ExperimentConfig {
    double lambda = 1.0;
    double window_x = 0.0;
    double window_y = 0.0;
    double window_width = 50.0;
    double window_height = 50.0;
    bool toroidal = false;
    std::optional<double> margin;  // auto: 5 / sqrt(lambda)
    std::size_t replications = 400;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    int k = 2;

    CooperationScheme scheme = CooperationScheme::nc();
    std::vector<CooperationScheme> schemes{CooperationScheme::nc(), CooperationScheme::of1(),
                                           CooperationScheme::of2(0.5), CooperationScheme::ph()};
    double beta = 4.0;
    double power = 1.0;
    double exclusion_radius = 0.5;
    FadingMode fading = FadingMode::rayleigh;

    std::size_t radii_count = 64;
    std::optional<double> radii_max;  // auto: 2 / sqrt(lambda)
    std::size_t probes = 2000;
    std::size_t ks_bootstrap = 999;

    std::vector<double> r_grid{0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0};
    std::optional<double> observation_radius;  // auto: half the shorter interior side

    std::vector<double> s_grid{0.0, 0.01, 0.1, 1.0, 10.0, 100.0};
    double lt_mean_count = 2.0;
    std::size_t lt_samples = 20000;
    double lt_epsilon = 1e-15;
    std::optional<std::size_t> lt_n_max;
    std::size_t lt_empirical_reps = 100000;

    std::set<std::string> emit{"csv", "json"};
    std::filesystem::path out = "out";

    /// Parses and assigns one key. Throws ConfigError.
    void set(std::string_view key, std::string_view value);

    /// Reads a config file on top of the current values.
    void load_file(const std::filesystem::path& path);

    /// Throws ConfigError if the combination of values is invalid.
    void validate() const;

    /// Canonical `key = value` listing of every setting that affects results
    /// (threads and the output directory are excluded).
    std::string canonical_text() const;

    /// FNV-1a 64 of canonical_text(), as 16 hex digits.
    std::string hash() const;

    Window window() const;
    double resolved_margin() const;
    BoundaryPolicy policy() const;
    ReplicationPlan plan() const;
    std::vector<double> radii() const;
    PathLossModel pathloss() const;
    Point2D observer() const;
    double resolved_observation_radius() const;
    /// Square window centred at the observer with lambda * area = lt_mean_count.
    Window laplace_window() const;
    bool emits(std::string_view kind) const { return emit.count(std::string(kind)) > 0; }
};

/// Every recognised key.
std::vector<std::string> config_keys();

}  // namespace mnnr
