#include "mnnr/spatial_index.hpp"

#include <algorithm>
#include <cmath>

namespace mnnr {

namespace {

constexpr double kPointsPerCell = 2.0;
constexpr std::size_t kMaxCellsPerAxis = 4096;

std::size_t cells_along(double extent, double target_side) {
    const double n = std::floor(extent / target_side);
    if (!(n >= 1.0)) return 1;
    return std::min<std::size_t>(static_cast<std::size_t>(n), kMaxCellsPerAxis);
}

}  // namespace

CellGrid::CellGrid(std::span<const Point2D> points, const Window& window,
                   const BoundaryPolicy& policy)
    : points_(points), window_(window), policy_(policy), torus_(is_toroidal(policy)) {
    const double n = std::max<double>(1.0, static_cast<double>(points.size()));
    const double side = std::sqrt(kPointsPerCell * window.area() / n);
    nx_ = cells_along(window.width(), side);
    ny_ = cells_along(window.height(), side);
    side_x_ = window.width() / static_cast<double>(nx_);
    side_y_ = window.height() / static_cast<double>(ny_);

    const Point2D lo = window.min_corner();
    std::vector<std::size_t> cell_of_point(points.size());
    cell_start_.assign(nx_ * ny_ + 1, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::size_t c = cell_of(points[i].y, lo.y, side_y_, ny_) * nx_ +
                              cell_of(points[i].x, lo.x, side_x_, nx_);
        cell_of_point[i] = c;
        ++cell_start_[c + 1];
    }
    for (std::size_t c = 0; c < nx_ * ny_; ++c) cell_start_[c + 1] += cell_start_[c];
    cell_items_.resize(points.size());
    std::vector<std::size_t> cursor(cell_start_.begin(), cell_start_.end() - 1);
    for (std::size_t i = 0; i < points.size(); ++i) cell_items_[cursor[cell_of_point[i]]++] = i;
}

std::size_t CellGrid::cell_of(double coord, double origin, double side, std::size_t count) const {
    const double c = std::floor((coord - origin) / side);
    if (!(c > 0.0)) return 0;
    return std::min(static_cast<std::size_t>(c), count - 1);
}

void CellGrid::scan_cell(std::size_t cx, std::size_t cy, Point2D query, std::size_t exclude,
                         Hit& best) const {
    const std::size_t c = cy * nx_ + cx;
    for (std::size_t k = cell_start_[c]; k < cell_start_[c + 1]; ++k) {
        const std::size_t i = cell_items_[k];
        if (i == exclude) continue;
        const double d2 = squared_distance(query, points_[i], window_, policy_);
        if (d2 < best.squared_distance || (d2 == best.squared_distance && i < best.index)) {
            best.index = i;
            best.squared_distance = d2;
        }
    }
}

CellGrid::Hit CellGrid::nearest(Point2D query, std::size_t exclude) const {
    Hit best;
    if (points_.empty()) return best;

    const Point2D lo = window_.min_corner();
    const auto cx = static_cast<std::ptrdiff_t>(cell_of(query.x, lo.x, side_x_, nx_));
    const auto cy = static_cast<std::ptrdiff_t>(cell_of(query.y, lo.y, side_y_, ny_));
    const auto nx = static_cast<std::ptrdiff_t>(nx_);
    const auto ny = static_cast<std::ptrdiff_t>(ny_);
    const double min_side = std::min(side_x_, side_y_);

    std::ptrdiff_t last_ring;
    if (torus_) {
        last_ring = std::max(nx, ny) / 2 + 1;
    } else {
        last_ring = std::max({cx, nx - 1 - cx, cy, ny - 1 - cy});
    }

    auto visit = [&](std::ptrdiff_t ix, std::ptrdiff_t iy) {
        if (torus_) {
            ix = ((ix % nx) + nx) % nx;
            iy = ((iy % ny) + ny) % ny;
        } else if (ix < 0 || iy < 0 || ix >= nx || iy >= ny) {
            return;
        }
        scan_cell(static_cast<std::size_t>(ix), static_cast<std::size_t>(iy), query, exclude, best);
    };

    for (std::ptrdiff_t k = 0; k <= last_ring; ++k) {
        if (k == 0) {
            visit(cx, cy);
        } else {
            for (std::ptrdiff_t dx = -k; dx <= k; ++dx) {
                visit(cx + dx, cy - k);
                visit(cx + dx, cy + k);
            }
            for (std::ptrdiff_t dy = -k + 1; dy <= k - 1; ++dy) {
                visit(cx - k, cy + dy);
                visit(cx + k, cy + dy);
            }
        }
        // Unvisited cells are at least k cell sides away.
        const double reach = static_cast<double>(k) * min_side;
        if (best.index != npos && best.squared_distance < reach * reach) break;
    }
    return best;
}

}  // namespace mnnr
