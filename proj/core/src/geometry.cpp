#include "mnnr/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mnnr {

Window::Window(Point2D min_corner, double width, double height)
    : min_(min_corner), width_(width), height_(height) {
    if (!std::isfinite(min_corner.x) || !std::isfinite(min_corner.y))
        throw std::domain_error("window corner must be finite");
    if (!(width > 0.0) || !(height > 0.0) || !std::isfinite(width) || !std::isfinite(height))
        throw std::domain_error("window width and height must be finite and positive");
}

Window Window::centered(Point2D center, double width, double height) {
    return Window({center.x - 0.5 * width, center.y - 0.5 * height}, width, height);
}

bool Window::contains(Point2D p) const {
    return p.x >= min_.x && p.x <= min_.x + width_ && p.y >= min_.y && p.y <= min_.y + height_;
}

Window Window::eroded(double margin) const {
    if (margin < 0.0) throw std::domain_error("margin must be non-negative");
    if (2.0 * margin >= std::min(width_, height_))
        throw std::domain_error("margin " + std::to_string(margin) + " leaves an empty interior");
    return Window({min_.x + margin, min_.y + margin}, width_ - 2.0 * margin, height_ - 2.0 * margin);
}

Window Window::scaled(double factor) const {
    if (!(factor > 0.0)) throw std::domain_error("scale factor must be positive");
    return Window({min_.x * factor, min_.y * factor}, width_ * factor, height_ * factor);
}

double default_margin(double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("default margin needs lambda > 0");
    return 5.0 / std::sqrt(lambda);
}

void validate_policy(const BoundaryPolicy& policy, const Window& window) {
    if (const auto* guard = std::get_if<GuardMargin>(&policy)) {
        if (!(guard->margin >= 0.0)) throw std::domain_error("guard margin must be >= 0");
        if (!(guard->margin < 0.5 * std::min(window.width(), window.height())))
            throw std::domain_error("guard margin must be < min(width, height)/2");
    }
}

Window interior(const Window& window, const BoundaryPolicy& policy) {
    if (const auto* guard = std::get_if<GuardMargin>(&policy)) return window.eroded(guard->margin);
    return window;
}

namespace {

double wrapped(double delta, double period) {
    delta = std::fabs(delta);
    // In-window points give |delta| <= period.
    return std::min(delta, period - delta);
}

}  // namespace

double squared_distance(Point2D a, Point2D b, const Window& window, const BoundaryPolicy& policy) {
    double dx = a.x - b.x;
    double dy = a.y - b.y;
    if (is_toroidal(policy)) {
        dx = wrapped(dx, window.width());
        dy = wrapped(dy, window.height());
    }
    return dx * dx + dy * dy;
}

double distance(Point2D a, Point2D b, const Window& window, const BoundaryPolicy& policy) {
    if (!window.contains(a) || !window.contains(b))
        throw std::domain_error("distance: point outside window");
    return std::sqrt(squared_distance(a, b, window, policy));
}

double euclidean(Point2D a, Point2D b) { return std::hypot(a.x - b.x, a.y - b.y); }

double gamma_constant() {
    return 2.0 / 3.0 - std::numbers::sqrt3 / (2.0 * std::numbers::pi);
}

double lens_union_area(double r) {
    if (!(r >= 0.0)) throw std::domain_error("lens_union_area: negative radius");
    return std::numbers::pi * r * r * (2.0 - gamma_constant());
}

}  // namespace mnnr
