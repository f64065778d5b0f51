#pragma once

#include "mnnr/geometry.hpp"

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace mnnr {

/// Uniform bucket grid over a window for nearest-neighbour queries with ring
/// expansion. Supports Euclidean and toroidal metrics.
class CellGrid {
public:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    struct Hit {
        std::size_t index = npos;
        double squared_distance = std::numeric_limits<double>::infinity();
    };

    /// Indexes `points`, which must outlive the grid and lie inside `window`.
    CellGrid(std::span<const Point2D> points, const Window& window, const BoundaryPolicy& policy);

    /// Nearest indexed point to `query`, skipping index `exclude`. Ties go to
    /// the lowest index. Returns npos when no candidate exists.
    Hit nearest(Point2D query, std::size_t exclude = npos) const;

    std::size_t size() const { return points_.size(); }

private:
    std::size_t cell_of(double coord, double origin, double side, std::size_t count) const;
    void scan_cell(std::size_t cx, std::size_t cy, Point2D query, std::size_t exclude, Hit& best) const;

    std::span<const Point2D> points_;
    Window window_;
    BoundaryPolicy policy_;
    bool torus_ = false;
    std::size_t nx_ = 1;
    std::size_t ny_ = 1;
    double side_x_ = 1.0;
    double side_y_ = 1.0;
    std::vector<std::size_t> cell_start_;
    std::vector<std::size_t> cell_items_;
};

}  // namespace mnnr
