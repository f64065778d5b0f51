#pragma once

#include "mnnr/geometry.hpp"
#include "mnnr/grouping.hpp"
#include "mnnr/point_process.hpp"
#include "mnnr/random.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mnnr {

/// Function of the radius estimated on a grid (G, F or J).
struct EmpiricalCurve {
    std::vector<double> radii;
    std::vector<double> values;
    std::vector<double> std_error;
    std::size_t n_samples = 0;
    /// Replications that had nothing to contribute (empty subprocess).
    std::size_t skipped_replications = 0;
};

/// Monte Carlo replications of a PPP on a fixed window. Replication r draws
/// its pattern from seed.with_stream(r).
struct ReplicationPlan {
    std::size_t n_replications = 1;
    double lambda = 1.0;
    Window window;
    BoundaryPolicy policy = GuardMargin{};
    SeedSpec seed;
    unsigned threads = 1;
};

void validate_plan(const ReplicationPlan& plan);

/// Pattern and K=2 grouping of replication r.
struct Realization {
    PointPattern pattern;
    GroupingResult grouping;
};
Realization realize(const ReplicationPlan& plan, std::size_t replication);

/// Fraction estimate pooled over replications; the standard error comes from the
/// spread of the per-replication ratios.
struct Proportion {
    double value = 0.0;
    double std_error = 0.0;
};

/// Pooled ratio sum(k)/sum(n) with a replication-level standard error.
Proportion pooled_ratio(std::span<const double> numerators, std::span<const double> denominators);

struct ClassFractions {
    Proportion single;
    Proportion paired;
    std::size_t n_atoms = 0;
    std::size_t n_replications = 0;
    /// Mean interior count per unit area of singles and pair atoms.
    Proportion single_intensity;
    Proportion paired_intensity;
};

/// Fractions of interior atoms that are single or paired.
ClassFractions estimate_class_fractions(const ReplicationPlan& plan);

struct VoronoiShares {
    Proportion singles;
    Proportion pairs;
    std::size_t n_probes = 0;
};

/// Probe points thrown uniformly in the interior take the class of their
/// nearest atom; the attribution fractions estimate the Voronoi surface shares.
VoronoiShares estimate_voronoi_shares(const ReplicationPlan& plan, std::size_t n_probes);

/// Which process a curve is measured on.
struct ProcessSelector {
    enum class Kind { singles, pairs, reference, all };
    Kind kind = Kind::all;
    /// Density of the independently thinned reference process.
    double reference_lambda = 0.0;

    static ProcessSelector singles() { return {Kind::singles, 0.0}; }
    static ProcessSelector pairs() { return {Kind::pairs, 0.0}; }
    static ProcessSelector reference(double lambda_i) { return {Kind::reference, lambda_i}; }
    static ProcessSelector all() { return {Kind::all, 0.0}; }
};

/// The selected process for one realization (reference processes are thinned
/// from the same pattern with seed tag `reference`).
PointPattern select_process(const ReplicationPlan& plan, std::size_t replication,
                            const Realization& realization, ProcessSelector which);

/// `count` radii evenly spaced on [0, r_max].
std::vector<double> radius_grid(double r_max, std::size_t count);

/// Default grid: 64 radii on [0, 2/sqrt(lambda)].
std::vector<double> default_radius_grid(double lambda);

/// Nearest-neighbour distance cdf G of the selected process, from its
/// interior atoms (minus sampling).
EmpiricalCurve estimate_nn_function(const ReplicationPlan& plan, ProcessSelector which,
                                    std::span<const double> radii);

/// Empty-space cdf F of the selected process from `n_probes` interior probes
/// per replication.
EmpiricalCurve estimate_empty_space(const ReplicationPlan& plan, ProcessSelector which,
                                    std::span<const double> radii, std::size_t n_probes);

/// J = (1 - G) / (1 - F), truncated where 1 - F < floor. Throws
/// std::domain_error when the grids differ.
EmpiricalCurve j_function(const EmpiricalCurve& g, const EmpiricalCurve& f, double floor = 1e-3);

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t n = 0;
};

/// One-sample Kolmogorov-Smirnov test of counts against Poisson with the mean
/// set to the sample mean. The statistic is the sup distance between the
/// empirical and Poisson step cdfs (evaluated on the integers). Because the
/// null is discrete and its mean is estimated, the p-value comes from a
/// parametric bootstrap with `n_bootstrap` resamples instead of the
/// Kolmogorov limit law.
KsResult ks_poisson_test(std::span<const std::uint64_t> counts, const SeedSpec& seed,
                         std::size_t n_bootstrap = 999, unsigned threads = 1);

/// Poisson cdf P(N <= k).
double poisson_cdf(std::uint64_t k, double mean);

/// Per-replication interior counts of the selected process.
std::vector<std::uint64_t> interior_counts(const ReplicationPlan& plan, ProcessSelector which);

/// KS test on interior counts; needs at least 100 replications.
KsResult ks_poisson_count_test(const ReplicationPlan& plan, ProcessSelector which,
                               std::size_t n_bootstrap = 999);

}  // namespace mnnr
