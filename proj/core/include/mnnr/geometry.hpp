#pragma once

#include <variant>

namespace mnnr {

/// Planar point, coordinates in meters.
struct Point2D {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2D&, const Point2D&) = default;
};

/// Axis-aligned rectangular observation window.
class Window {
public:
    Window() = default;
    /// Throws std::domain_error unless width and height are finite and > 0.
    Window(Point2D min_corner, double width, double height);

    static Window square(double side) { return Window({0.0, 0.0}, side, side); }
    static Window centered(Point2D center, double width, double height);

    Point2D min_corner() const { return min_; }
    Point2D max_corner() const { return {min_.x + width_, min_.y + height_}; }
    Point2D center() const { return {min_.x + 0.5 * width_, min_.y + 0.5 * height_}; }
    double width() const { return width_; }
    double height() const { return height_; }
    double area() const { return width_ * height_; }

    /// Closed containment test.
    bool contains(Point2D p) const;

    /// Window shrunk by `margin` on every side. Throws if nothing is left.
    Window eroded(double margin) const;

    /// Same window with all coordinates multiplied by `factor` > 0.
    Window scaled(double factor) const;

    friend bool operator==(const Window&, const Window&) = default;

private:
    Point2D min_{0.0, 0.0};
    double width_ = 1.0;
    double height_ = 1.0;
};

struct GuardMargin {
    double margin = 0.0;
    friend bool operator==(const GuardMargin&, const GuardMargin&) = default;
};

struct Toroidal {
    friend bool operator==(const Toroidal&, const Toroidal&) = default;
};

/// Edge handling. Guard margin: all atoms take part in grouping, statistics are
/// read from the eroded interior. Toroidal: the window is wrapped into a torus.
using BoundaryPolicy = std::variant<GuardMargin, Toroidal>;

inline bool is_toroidal(const BoundaryPolicy& policy) {
    return std::holds_alternative<Toroidal>(policy);
}

/// Default guard margin: five mean nearest-neighbour spacings, 5/sqrt(lambda).
double default_margin(double lambda);

/// Throws std::domain_error when the margin is negative or not smaller than
/// half the shorter window side.
void validate_policy(const BoundaryPolicy& policy, const Window& window);

/// Region in which statistics are collected: the eroded window for a guard
/// margin, the whole window on the torus.
Window interior(const Window& window, const BoundaryPolicy& policy);

/// Squared distance without range checks; hot path for the spatial index.
double squared_distance(Point2D a, Point2D b, const Window& window, const BoundaryPolicy& policy);

/// Euclidean distance (guard margin) or wrapped distance on the torus induced
/// by the window. Throws std::domain_error if either point is outside the window.
double distance(Point2D a, Point2D b, const Window& window, const BoundaryPolicy& policy);

/// Plain Euclidean distance.
double euclidean(Point2D a, Point2D b);

/// 2/3 - sqrt(3)/(2 pi): area of the intersection of two unit discs whose
/// centres lie on each other's circumference, divided by pi.
double gamma_constant();

/// Area of B(x, r) union B(y, r) with |x - y| = r, i.e. pi r^2 (2 - gamma).
double lens_union_area(double r);

}  // namespace mnnr
