#include "mnnr/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace mnnr {

PointPattern::PointPattern(std::vector<Point2D> points, Window window, double density_lambda,
                           std::optional<SeedSpec> seed)
    : points_(std::move(points)), window_(window), lambda_(density_lambda), seed_(seed) {
    if (!(density_lambda >= 0.0) || !std::isfinite(density_lambda))
        throw std::domain_error("pattern density must be finite and >= 0");
    for (const auto& p : points_) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::domain_error("pattern contains a non-finite coordinate");
        if (!window_.contains(p)) throw std::domain_error("pattern point outside window");
    }
    std::vector<Point2D> sorted(points_);
    std::sort(sorted.begin(), sorted.end(),
              [](Point2D a, Point2D b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::domain_error("pattern contains duplicated coordinates");
}

PointPattern::PointPattern(Unchecked, std::vector<Point2D> points, Window window,
                           double density_lambda, std::optional<SeedSpec> seed,
                           std::vector<std::size_t> source)
    : points_(std::move(points)),
      window_(window),
      lambda_(density_lambda),
      seed_(seed),
      source_(std::move(source)) {}

PointPattern PointPattern::restricted(std::span<const std::size_t> indices,
                                      double density_lambda) const {
    std::vector<Point2D> pts;
    std::vector<std::size_t> source;
    pts.reserve(indices.size());
    source.reserve(indices.size());
    for (std::size_t i : indices) {
        if (i >= points_.size()) throw std::out_of_range("restricted: index out of range");
        pts.push_back(points_[i]);
        source.push_back(i);
    }
    return PointPattern(Unchecked{}, std::move(pts), window_, density_lambda, seed_,
                        std::move(source));
}

PointPattern PointPattern::scaled(double factor) const {
    std::vector<Point2D> pts;
    pts.reserve(points_.size());
    for (const auto& p : points_) pts.push_back({p.x * factor, p.y * factor});
    return PointPattern(Unchecked{}, std::move(pts), window_.scaled(factor),
                        lambda_ / (factor * factor), seed_, source_);
}

PointPattern sample_ppp(double lambda, const Window& window, const SeedSpec& seed) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw std::domain_error("sample_ppp: lambda must be finite and >= 0");
    Rng rng(seed);
    const auto n = static_cast<std::size_t>(rng.poisson(lambda * window.area()));
    const Point2D lo = window.min_corner();
    std::vector<Point2D> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = lo.x + window.width() * rng.uniform();
        const double y = lo.y + window.height() * rng.uniform();
        pts.push_back({x, y});
    }
    // Coincident uniform doubles have probability ~n^2 2^-106; skip the O(n log n) check.
    return PointPattern(PointPattern::Unchecked{}, std::move(pts), window, lambda, seed, {});
}

PointPattern independent_thin(const PointPattern& pattern, double keep_prob, const SeedSpec& seed) {
    if (!(keep_prob >= 0.0 && keep_prob <= 1.0))
        throw std::domain_error("independent_thin: keep probability outside [0, 1]");
    Rng rng(seed);
    std::vector<std::size_t> kept;
    kept.reserve(pattern.size());
    for (std::size_t i = 0; i < pattern.size(); ++i)
        if (rng.uniform() < keep_prob) kept.push_back(i);
    return pattern.restricted(kept, keep_prob * pattern.density_lambda());
}

}  // namespace mnnr
