#pragma once

#include "mnnr/geometry.hpp"
#include "mnnr/grouping.hpp"
#include "mnnr/point_process.hpp"
#include "mnnr/random.hpp"
#include "mnnr/signal_model.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace mnnr {

/// Fading of one link: power gain and phase.
struct FadingSample {
    double nu = 1.0;
    double theta = 0.0;
};

struct InterferenceSample {
    double i1 = 0.0;
    double i2 = 0.0;
    double total = 0.0;
};

/// Random inputs of one interference draw. Holding them apart from the
/// evaluation lets several schemes be compared on identical fading.
struct LinkDraws {
    std::vector<FadingSample> atoms;
    /// Uniform draw per pair deciding the OF2 transmitter.
    std::vector<double> pair_coins;
};

/// Fading for `n_atoms` links (in atom order) and coins for `n_pairs` pairs.
LinkDraws draw_links(std::size_t n_atoms, std::size_t n_pairs, double power, FadingMode mode,
                     const SeedSpec& seed);
LinkDraws draw_links(std::size_t n_atoms, std::size_t n_pairs, double power, FadingMode mode,
                     Rng& rng);

/// nu * |observer - bs|^-beta. Throws std::domain_error for coincident points.
double channel_gain(Point2D observer, Point2D bs, double nu, double beta);

/// Received power of a pair with gains hx, hy and phases theta_x, theta_y.
/// OF2 lets the first member transmit when coin < q.
double pair_signal(double hx, double hy, double theta_x, double theta_y,
                   const CooperationScheme& scheme, double coin);

/// Interference at `observer` from singles (i1) and pairs (i2) for given
/// draws. Singles count when R < d <= outer_radius; pairs when both members
/// do. Each unordered pair counts once. Triplets are rejected.
InterferenceSample evaluate_interference(const PointPattern& pattern, const GroupingResult& grouping,
                                         Point2D observer, const CooperationScheme& scheme,
                                         const PathLossModel& pl, const LinkDraws& draws,
                                         double outer_radius = INFINITY);

/// Same draws evaluated for every exclusion radius in `radii` (any order).
/// pl.exclusion_radius is ignored.
std::vector<InterferenceSample> interference_profile(const PointPattern& pattern,
                                                     const GroupingResult& grouping,
                                                     Point2D observer,
                                                     const CooperationScheme& scheme,
                                                     const PathLossModel& pl,
                                                     const LinkDraws& draws,
                                                     std::span<const double> radii,
                                                     double outer_radius = INFINITY);

/// One interference draw with fresh fading from `seed`.
InterferenceSample sample_interference(const PointPattern& pattern, const GroupingResult& grouping,
                                       Point2D observer, const CooperationScheme& scheme,
                                       const PathLossModel& pl, const SeedSpec& seed,
                                       FadingMode fading = FadingMode::rayleigh);

struct LaplacePoint {
    double s = 0.0;
    double value = 1.0;
    double std_error = 0.0;
};

/// Sample mean of exp(-s X) per s, with its standard error.
std::vector<LaplacePoint> empirical_laplace(std::span<const double> samples,
                                            std::span<const double> s_grid);

}  // namespace mnnr
