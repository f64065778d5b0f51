#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

namespace mnnr {

/// Tolerances for the adaptive integrators.
struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-15;
    std::size_t max_subdivisions = 4000;
    /// Radius beyond which power-law radial integrals switch to the
    /// substitution r = T u^(-1/(beta-2)), which maps [T, inf) onto (0, 1] and
    /// turns a pure power-law tail into a constant. Zero selects it
    /// automatically from R and lambda.
    double tail_cutoff = 0.0;
    /// Outer radius of the observation disc; infinity for the whole plane.
    double outer_radius = INFINITY;
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t evaluations = 0;
    std::size_t subdivisions = 0;
    bool converged = true;
};

namespace detail {

// Gauss-Kronrod 7/15 nodes and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gauss_kronrod15(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double fsum = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * fsum;
        if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
    }
    const double value = kronrod * half;
    const double error = std::fabs((kronrod - gauss) * half);
    return {a, b, value, error};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
/// `breakpoints` inside (a, b) seed the initial partition, which keeps kinks
/// off the interior of a panel.
template <class F>
QuadResult integrate(F&& f, double a, double b, double abs_tol, double rel_tol,
                     std::size_t max_subdivisions, std::span<const double> breakpoints = {}) {
    QuadResult out;
    if (!(b > a)) return out;

    std::vector<double> edges{a};
    std::vector<double> inner(breakpoints.begin(), breakpoints.end());
    std::sort(inner.begin(), inner.end());
    for (double p : inner)
        if (p > edges.back() && p < b) edges.push_back(p);
    edges.push_back(b);

    std::priority_queue<detail::Segment> heap;
    double total = 0.0, error = 0.0;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        auto seg = detail::gauss_kronrod15(f, edges[k], edges[k + 1]);
        total += seg.value;
        error += seg.error;
        heap.push(seg);
        out.evaluations += 15;
    }

    while (error > std::max(abs_tol, rel_tol * std::fabs(total))) {
        if (out.subdivisions >= max_subdivisions) {
            out.converged = false;
            break;
        }
        const auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Interval cannot be split further in double precision.
            out.converged = false;
            heap.push(worst);
            break;
        }
        const auto left = detail::gauss_kronrod15(f, worst.a, mid);
        const auto right = detail::gauss_kronrod15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        out.evaluations += 30;
        ++out.subdivisions;
    }

    // Re-sum to shed the drift of the running updates.
    total = 0.0;
    error = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    out.value = total;
    out.abs_error = error;
    return out;
}

template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadratureSpec& spec,
                     std::span<const double> breakpoints = {}) {
    return integrate(std::forward<F>(f), a, b, spec.abs_tol, spec.rel_tol, spec.max_subdivisions,
                     breakpoints);
}

}  // namespace mnnr
