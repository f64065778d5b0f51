#pragma once

#include "mnnr/geometry.hpp"
#include "mnnr/interference.hpp"
#include "mnnr/quadrature.hpp"
#include "mnnr/random.hpp"
#include "mnnr/signal_model.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace mnnr {

/// Probability that two atoms at distance r are mutual nearest neighbours:
/// exp(-lambda pi r^2 (2 - gamma)).
double pair_probability(double r, double lambda);

/// Probability that a typical atom is paired, 1 / (2 - gamma).
double p_star();

/// Nearest-neighbour cdf of the paired atoms, 1 - exp(-lambda pi r^2 (2 - gamma)).
/// Rayleigh with scale (2 lambda pi (2 - gamma))^(-1/2).
double nn_cdf_pairs(double r, double lambda);

/// Nearest-neighbour (and empty-space) cdf of a PPP of density lambda_i.
double nn_cdf_reference(double r, double lambda_i);

enum class AtomClass { singles, pairs };

/// Intensity of the singles, (1 - p*) lambda, or of the paired atoms, p* lambda.
double intensity_density(double lambda, AtomClass which);

/// Closed form of the mean single interference over the annulus
/// R < r <= outer_radius: (1 - p*) lambda 2 pi P (R^(2-beta) - L^(2-beta)) / (beta - 2).
double expected_interference_singles_closed_form(double lambda, const PathLossModel& pl,
                                                 double outer_radius = INFINITY);

/// Mean single interference by radial quadrature (power-law tail handled by
/// substitution). Requires R > 0 when the outer radius is infinite; throws
/// NumericError when the quadrature does not converge.
double expected_interference_singles(double lambda, const PathLossModel& pl,
                                     const QuadratureSpec& quad = {});

/// E[g(x, y)] for a pair at distances rx, ry from the observer.
/// NC and PH: mx + my. OF2: q mx + (1 - q) my. OF1: max(mx, my) without
/// fading; with Rayleigh fading E[max] = mx + my - (1/mx + 1/my)^-1.
double expected_pair_signal(double rx, double ry, const PathLossModel& pl,
                            const CooperationScheme& scheme, FadingMode fading);

/// Mean pair interference: (lambda^2 / 2) times the integral of E[g] exp(-lambda pi
/// |x-y|^2 (2-gamma)) over both members outside R (and inside the outer
/// radius), reduced by isotropy to (r_x, |x-y|, angle).
double expected_interference_pairs(double lambda, const PathLossModel& pl,
                                   const CooperationScheme& scheme, const QuadratureSpec& quad = {},
                                   FadingMode fading = FadingMode::rayleigh);

/// Configuration of the windowed Laplace-transform series.
struct LaplaceSeriesSpec {
    /// Fixed truncation index; empty selects the smallest n whose Poisson
    /// upper tail is below epsilon.
    std::optional<std::size_t> n_max;
    double epsilon = 1e-6;
    std::size_t mc_samples_per_term = 10000;
    std::vector<double> s_grid{0.0, 0.1, 1.0, 10.0};
    SeedSpec seed;
    unsigned threads = 1;
    FadingMode fading = FadingMode::rayleigh;
    QuadratureSpec quad{1e-10, 1e-14, 4000, 0.0, INFINITY};
};

/// Largest index the series accepts; beyond it the window is too crowded.
inline constexpr std::size_t kMaxSeriesTerms = 64;

/// P(N > n) for N ~ Poisson(mean), summed directly (no cancellation).
double poisson_upper_tail(std::size_t n, double mean);

/// Smallest n with P(N > n) < epsilon; NumericError if it exceeds kMaxSeriesTerms.
std::size_t series_truncation(double mean, double epsilon);

struct LaplaceSeries {
    std::vector<LaplacePoint> points;
    std::size_t n_max = 0;
    /// Poisson mass of the omitted terms.
    double tail_bound = 0.0;
    double mean_count = 0.0;
};

/// Windowed Laplace transform of the single interference at `observer`:
/// sum over n of Poisson(n; lambda S) E_n(s), where E_n is the mean of
/// exp(-s I) over n i.i.d. uniform atoms grouped inside the window only.
/// n = 0 and n = 2 give 1 (two atoms always pair), n = 1 is a 2-D quadrature
/// with the fading averaged analytically, n >= 3 are Monte Carlo averages.
LaplaceSeries laplace_transform_singles(double lambda, const Window& window, Point2D observer,
                                        const PathLossModel& pl, const LaplaceSeriesSpec& spec);

/// Windowed Laplace transform of the pair interference. n = 0, 1 give 1 and
/// n >= 2 are Monte Carlo averages over placements and fading.
LaplaceSeries laplace_transform_pairs(double lambda, const Window& window, Point2D observer,
                                      const PathLossModel& pl, const CooperationScheme& scheme,
                                      const LaplaceSeriesSpec& spec);

}  // namespace mnnr
