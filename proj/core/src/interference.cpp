#include "mnnr/interference.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace mnnr {

LinkDraws draw_links(std::size_t n_atoms, std::size_t n_pairs, double power, FadingMode mode,
                     const SeedSpec& seed) {
    Rng rng(seed);
    return draw_links(n_atoms, n_pairs, power, mode, rng);
}

LinkDraws draw_links(std::size_t n_atoms, std::size_t n_pairs, double power, FadingMode mode,
                     Rng& rng) {
    LinkDraws draws;
    draws.atoms.resize(n_atoms);
    for (auto& f : draws.atoms) {
        f.nu = mode == FadingMode::rayleigh ? rng.exponential(power) : power;
        f.theta = 2.0 * std::numbers::pi * rng.uniform();
    }
    draws.pair_coins.resize(n_pairs);
    for (auto& c : draws.pair_coins) c = rng.uniform();
    return draws;
}

double channel_gain(Point2D observer, Point2D bs, double nu, double beta) {
    const double d = euclidean(observer, bs);
    if (d == 0.0) throw std::domain_error("channel_gain: observer coincides with base station");
    return nu * std::pow(d, -beta);
}

double pair_signal(double hx, double hy, double theta_x, double theta_y,
                   const CooperationScheme& scheme, double coin) {
    switch (scheme.kind) {
        case CooperationScheme::Kind::nc: return hx + hy;
        case CooperationScheme::Kind::of1: return std::max(hx, hy);
        case CooperationScheme::Kind::of2: return coin < scheme.q ? hx : hy;
        case CooperationScheme::Kind::ph:
            return std::max(0.0, hx + hy + 2.0 * std::sqrt(hx * hy) * std::cos(theta_x - theta_y));
    }
    return 0.0;
}

namespace {

// Contribution that is present while the exclusion radius is below `threshold`.
struct Contribution {
    double threshold;
    double power;
    bool single;
};

std::vector<Contribution> contributions(const PointPattern& pattern, const GroupingResult& grouping,
                                        Point2D observer, const CooperationScheme& scheme,
                                        const PathLossModel& pl, const LinkDraws& draws,
                                        double min_radius, double outer_radius) {
    if (!grouping.triplets.empty())
        throw std::domain_error("interference is defined for singles and pairs only");
    if (draws.atoms.size() < pattern.size() || draws.pair_coins.size() < grouping.pairs.size())
        throw std::domain_error("link draws do not cover the pattern");

    for (const auto& p : pattern.points())
        if (p == observer) throw std::domain_error("observer coincides with a base station");

    std::vector<Contribution> out;
    out.reserve(grouping.singles.size() + grouping.pairs.size());
    for (std::size_t i : grouping.singles) {
        const double d = euclidean(observer, pattern[i]);
        if (d <= min_radius || d > outer_radius) continue;
        out.push_back({d, channel_gain(observer, pattern[i], draws.atoms[i].nu, pl.beta), true});
    }
    for (std::size_t p = 0; p < grouping.pairs.size(); ++p) {
        const auto [a, b] = grouping.pairs[p];
        const double da = euclidean(observer, pattern[a]);
        const double db = euclidean(observer, pattern[b]);
        const double nearest = std::min(da, db);
        if (nearest <= min_radius || std::max(da, db) > outer_radius) continue;
        const double ha = channel_gain(observer, pattern[a], draws.atoms[a].nu, pl.beta);
        const double hb = channel_gain(observer, pattern[b], draws.atoms[b].nu, pl.beta);
        out.push_back({nearest,
                       pair_signal(ha, hb, draws.atoms[a].theta, draws.atoms[b].theta, scheme,
                                   draws.pair_coins[p]),
                       false});
    }
    return out;
}

}  // namespace

InterferenceSample evaluate_interference(const PointPattern& pattern, const GroupingResult& grouping,
                                         Point2D observer, const CooperationScheme& scheme,
                                         const PathLossModel& pl, const LinkDraws& draws,
                                         double outer_radius) {
    validate(pl);
    InterferenceSample s;
    for (const auto& c : contributions(pattern, grouping, observer, scheme, pl, draws,
                                       pl.exclusion_radius, outer_radius))
        (c.single ? s.i1 : s.i2) += c.power;
    s.total = s.i1 + s.i2;
    return s;
}

std::vector<InterferenceSample> interference_profile(const PointPattern& pattern,
                                                     const GroupingResult& grouping,
                                                     Point2D observer,
                                                     const CooperationScheme& scheme,
                                                     const PathLossModel& pl,
                                                     const LinkDraws& draws,
                                                     std::span<const double> radii,
                                                     double outer_radius) {
    std::vector<InterferenceSample> out(radii.size());
    if (radii.empty()) return out;
    PathLossModel model = pl;
    model.exclusion_radius = *std::min_element(radii.begin(), radii.end());
    validate(model);

    auto terms = contributions(pattern, grouping, observer, scheme, model, draws,
                               model.exclusion_radius, outer_radius);
    // Descending thresholds: prefix sums give the total for any radius.
    std::sort(terms.begin(), terms.end(),
              [](const Contribution& a, const Contribution& b) { return a.threshold > b.threshold; });

    std::vector<std::size_t> order(radii.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return radii[a] > radii[b]; });

    double i1 = 0.0, i2 = 0.0;
    std::size_t next = 0;
    for (std::size_t k : order) {
        while (next < terms.size() && terms[next].threshold > radii[k]) {
            (terms[next].single ? i1 : i2) += terms[next].power;
            ++next;
        }
        out[k] = {i1, i2, i1 + i2};
    }
    return out;
}

InterferenceSample sample_interference(const PointPattern& pattern, const GroupingResult& grouping,
                                       Point2D observer, const CooperationScheme& scheme,
                                       const PathLossModel& pl, const SeedSpec& seed,
                                       FadingMode fading) {
    if (!pattern.window().contains(observer))
        throw std::domain_error("sample_interference: observer outside window");
    const auto draws = draw_links(pattern.size(), grouping.pairs.size(), pl.power, fading, seed);
    return evaluate_interference(pattern, grouping, observer, scheme, pl, draws);
}

std::vector<LaplacePoint> empirical_laplace(std::span<const double> samples,
                                            std::span<const double> s_grid) {
    if (samples.empty()) throw std::domain_error("empirical_laplace: no samples");
    const double n = static_cast<double>(samples.size());
    std::vector<LaplacePoint> out;
    out.reserve(s_grid.size());
    for (double s : s_grid) {
        if (!(s >= 0.0)) throw std::domain_error("empirical_laplace: s must be >= 0");
        double sum = 0.0, sum_sq = 0.0;
        for (double x : samples) {
            const double e = std::exp(-s * x);
            sum += e;
            sum_sq += e * e;
        }
        const double mean = sum / n;
        const double var = n > 1.0 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
        out.push_back({s, mean, std::sqrt(var / n)});
    }
    return out;
}

}  // namespace mnnr
