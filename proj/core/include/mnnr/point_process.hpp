#pragma once

#include "mnnr/geometry.hpp"
#include "mnnr/random.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace mnnr {

/// Finite realisation of a point process inside a rectangular window.
///
/// Point indices are stable for the life of the pattern. Restrictions made by
/// `subpattern` or `independent_thin` remember, for every retained point, its
/// index in the pattern they were cut from (`source_index`).
class PointPattern {
public:
    PointPattern() = default;

    /// Throws std::domain_error if a point lies outside the window, a
    /// coordinate is not finite, two points coincide, or lambda < 0.
    PointPattern(std::vector<Point2D> points, Window window, double density_lambda,
                 std::optional<SeedSpec> seed = std::nullopt);

    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const Point2D& operator[](std::size_t i) const { return points_[i]; }
    std::span<const Point2D> points() const { return points_; }

    const Window& window() const { return window_; }
    double density_lambda() const { return lambda_; }
    const std::optional<SeedSpec>& seed() const { return seed_; }

    /// Index of point i in the parent pattern; i itself for a root pattern.
    std::size_t source_index(std::size_t i) const {
        return source_.empty() ? i : source_[i];
    }

    /// Restriction to `indices` (ascending), keeping provenance.
    PointPattern restricted(std::span<const std::size_t> indices, double density_lambda) const;

    /// All coordinates and the window multiplied by `factor`; lambda / factor^2.
    PointPattern scaled(double factor) const;

private:
    friend PointPattern sample_ppp(double, const Window&, const SeedSpec&);
    struct Unchecked {};
    PointPattern(Unchecked, std::vector<Point2D> points, Window window, double density_lambda,
                 std::optional<SeedSpec> seed, std::vector<std::size_t> source);

    std::vector<Point2D> points_;
    Window window_;
    double lambda_ = 0.0;
    std::optional<SeedSpec> seed_;
    std::vector<std::size_t> source_;
};

/// Homogeneous PPP: N ~ Poisson(lambda * area), then N i.i.d. uniform points.
/// Same SeedSpec gives a bit-identical pattern.
PointPattern sample_ppp(double lambda, const Window& window, const SeedSpec& seed);

/// Keeps every point independently with probability keep_prob.
PointPattern independent_thin(const PointPattern& pattern, double keep_prob, const SeedSpec& seed);

}  // namespace mnnr
