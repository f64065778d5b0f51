#include "mnnr/analytic.hpp"

#include "mnnr/grouping.hpp"
#include "mnnr/parallel.hpp"
#include "mnnr/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mnnr {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::domain_error("lambda must be > 0");
}

void require_radius(double r) {
    if (!(r >= 0.0)) throw std::domain_error("radius must be >= 0");
}

QuadResult checked(QuadResult r, const char* what) {
    if (!r.converged) {
        std::ostringstream msg;
        msg << what << ": quadrature did not converge (value " << r.value << ", error estimate "
            << r.abs_error << ", " << r.subdivisions << " subdivisions)";
        throw NumericError(msg.str());
    }
    return r;
}

double auto_tail_cutoff(double lambda, double exclusion) {
    return 2.0 * exclusion + 10.0 / std::sqrt(lambda);
}

// Integral of r^(1-beta) phi(r) over (lo, hi]; beyond the tail cutoff T the
// substitution r = T u^(-1/(beta-2)) gives T^(2-beta)/(beta-2) times the
// integral of phi over u in [(T/hi)^(beta-2), 1).
template <class Phi>
double radial_power_integral(Phi&& phi, double lo, double hi, double beta, double tail_cutoff,
                             const QuadratureSpec& quad, const char* what) {
    if (!(hi > lo)) return 0.0;
    const double t = std::max(tail_cutoff, lo);
    double total = 0.0;
    const double near_hi = std::min(t, hi);
    if (near_hi > lo) {
        auto f = [&](double r) { return std::pow(r, 1.0 - beta) * phi(r); };
        total += checked(integrate(f, lo, near_hi, quad), what).value;
    }
    if (hi > t) {
        const double k = beta - 2.0;
        const double u_lo = std::isinf(hi) ? 0.0 : std::pow(t / hi, k);
        auto g = [&](double u) { return phi(t * std::pow(u, -1.0 / k)); };
        total += std::pow(t, -k) / k * checked(integrate(g, u_lo, 1.0, quad), what).value;
    }
    return total;
}

}  // namespace

double pair_probability(double r, double lambda) {
    require_radius(r);
    require_positive_lambda(lambda);
    return std::exp(-lambda * lens_union_area(r));
}

double p_star() { return 1.0 / (2.0 - gamma_constant()); }

double nn_cdf_pairs(double r, double lambda) {
    require_radius(r);
    require_positive_lambda(lambda);
    return -std::expm1(-lambda * lens_union_area(r));
}

double nn_cdf_reference(double r, double lambda_i) {
    require_radius(r);
    if (!(lambda_i >= 0.0)) throw std::domain_error("reference density must be >= 0");
    return -std::expm1(-lambda_i * kPi * r * r);
}

double intensity_density(double lambda, AtomClass which) {
    require_positive_lambda(lambda);
    return which == AtomClass::pairs ? p_star() * lambda : (1.0 - p_star()) * lambda;
}

double expected_interference_singles_closed_form(double lambda, const PathLossModel& pl,
                                                 double outer_radius) {
    validate(pl);
    require_positive_lambda(lambda);
    const double r = pl.exclusion_radius;
    if (r == 0.0) throw NumericError("mean interference diverges for exclusion radius 0");
    if (!(outer_radius > r)) return 0.0;
    const double k = pl.beta - 2.0;
    const double outer = std::isinf(outer_radius) ? 0.0 : std::pow(outer_radius, -k);
    return (1.0 - p_star()) * lambda * 2.0 * kPi * pl.power * (std::pow(r, -k) - outer) / k;
}

double expected_interference_singles(double lambda, const PathLossModel& pl,
                                     const QuadratureSpec& quad) {
    validate(pl);
    require_positive_lambda(lambda);
    const double r = pl.exclusion_radius;
    if (r == 0.0) throw NumericError("mean interference diverges for exclusion radius 0");
    const double t = quad.tail_cutoff > 0.0 ? quad.tail_cutoff : auto_tail_cutoff(lambda, r);
    const double angular_power = 2.0 * kPi * pl.power;
    const double radial = radial_power_integral([&](double) { return angular_power; }, r,
                                                quad.outer_radius, pl.beta, t, quad,
                                                "expected_interference_singles");
    return (1.0 - p_star()) * lambda * radial;
}

double expected_pair_signal(double rx, double ry, const PathLossModel& pl,
                            const CooperationScheme& scheme, FadingMode fading) {
    const double mx = pl.power * std::pow(rx, -pl.beta);
    const double my = pl.power * std::pow(ry, -pl.beta);
    switch (scheme.kind) {
        case CooperationScheme::Kind::nc:
        case CooperationScheme::Kind::ph:
            return mx + my;
        case CooperationScheme::Kind::of2:
            return scheme.q * mx + (1.0 - scheme.q) * my;
        case CooperationScheme::Kind::of1:
            if (fading == FadingMode::none) return std::max(mx, my);
            return mx + my - mx * my / (mx + my);
    }
    return 0.0;
}

double expected_interference_pairs(double lambda, const PathLossModel& pl,
                                   const CooperationScheme& scheme, const QuadratureSpec& quad,
                                   FadingMode fading) {
    validate(pl);
    require_positive_lambda(lambda);
    const double R = pl.exclusion_radius;
    const double L = quad.outer_radius;
    if (R == 0.0) throw NumericError("mean interference diverges for exclusion radius 0");
    if (!(L > R)) return 0.0;

    const double c = lambda * kPi * (2.0 - gamma_constant());
    const double rho_max = std::sqrt(42.0 / c);
    const double t = quad.tail_cutoff > 0.0 ? quad.tail_cutoff : auto_tail_cutoff(lambda, R);
    QuadratureSpec inner = quad;
    inner.rel_tol = 0.1 * quad.rel_tol;
    inner.abs_tol = 0.0;

    // Angular integral over the partner direction, scaled by rx^beta so that
    // it tends to a constant as rx grows.
    auto angular = [&](double rx, double rho) {
        auto eg = [&](double ry) { return expected_pair_signal(rx, ry, pl, scheme, fading); };
        const double scale = std::pow(rx, pl.beta);
        if (rho == 0.0) return 2.0 * kPi * scale * eg(rx);
        const double denom = 2.0 * rx * rho;
        const double a = (R * R - rx * rx - rho * rho) / denom;  // ry > R  <=> cos > a
        const double b = std::isinf(L) ? INFINITY : (L * L - rx * rx - rho * rho) / denom;
        if (a >= 1.0 || b < -1.0) return 0.0;
        const double phi_lo = b >= 1.0 ? 0.0 : std::acos(b);
        const double phi_hi = a <= -1.0 ? kPi : std::acos(a);
        if (!(phi_hi > phi_lo)) return 0.0;
        auto f = [&](double phi) {
            const double ry2 = rx * rx + rho * rho + 2.0 * rx * rho * std::cos(phi);
            return scale * eg(std::sqrt(std::max(ry2, 0.0)));
        };
        return 2.0 * checked(integrate(f, phi_lo, phi_hi, inner), "expected_interference_pairs").value;
    };

    auto phi = [&](double rx) {
        std::vector<double> cuts{std::fabs(rx - R), rx + R};
        if (!std::isinf(L)) {
            cuts.push_back(std::fabs(L - rx));
            cuts.push_back(L + rx);
        }
        auto f = [&](double rho) { return rho * std::exp(-c * rho * rho) * angular(rx, rho); };
        const auto r = checked(integrate(f, 0.0, rho_max, inner, cuts), "expected_interference_pairs");
        return 2.0 * kPi * r.value;
    };

    const double radial =
        radial_power_integral(phi, R, L, pl.beta, t, quad, "expected_interference_pairs");
    return 0.5 * lambda * lambda * radial;
}

double poisson_upper_tail(std::size_t n, double mean) {
    if (!(mean >= 0.0)) throw std::domain_error("poisson_upper_tail: negative mean");
    if (mean == 0.0) return 0.0;
    double k = static_cast<double>(n) + 1.0;
    double term = std::exp(-mean + k * std::log(mean) - std::lgamma(k + 1.0));
    double sum = 0.0;
    for (int guard = 0; guard < 100000; ++guard) {
        sum += term;
        k += 1.0;
        term *= mean / k;
        if (k > mean && term < 1e-300 + sum * 1e-18) break;
    }
    return sum;
}

std::size_t series_truncation(double mean, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::domain_error("epsilon must lie in (0, 1)");
    for (std::size_t n = 0; n <= kMaxSeriesTerms; ++n)
        if (poisson_upper_tail(n, mean) < epsilon) return n;
    std::ostringstream msg;
    msg << "Laplace series needs more than " << kMaxSeriesTerms << " terms for lambda*S(A) = "
        << mean << " at tail bound " << epsilon << "; use a smaller window";
    throw NumericError(msg.str());
}

namespace {

enum class Field { singles, pairs };

struct TermEstimate {
    std::vector<double> mean;
    std::vector<double> variance;  // of the estimator of the mean
};

// Mean of exp(-s I) over n uniform atoms in the window, grouped in the window
// only. All s share the same placements and fading.
TermEstimate monte_carlo_term(Field field, std::size_t n, const Window& window, Point2D observer,
                              const PathLossModel& pl, const CooperationScheme& scheme,
                              const LaplaceSeriesSpec& spec) {
    const auto& s_grid = spec.s_grid;
    std::vector<double> sum(s_grid.size(), 0.0), sum_sq(s_grid.size(), 0.0);
    Rng rng(spec.seed.with_stream(n).with_tag(stream_tag::series));
    const Point2D lo = window.min_corner();
    const BoundaryPolicy policy = GuardMargin{0.0};
    std::vector<Point2D> pts(n);
    for (std::size_t m = 0; m < spec.mc_samples_per_term; ++m) {
        for (auto& p : pts) p = {lo.x + window.width() * rng.uniform(), lo.y + window.height() * rng.uniform()};
        const PointPattern pattern(pts, window, 0.0);
        const auto grouping = classify(pattern, policy, 2);
        const auto draws = draw_links(n, grouping.pairs.size(), pl.power, spec.fading, rng);
        const auto sample = evaluate_interference(pattern, grouping, observer, scheme, pl, draws);
        const double value = field == Field::singles ? sample.i1 : sample.i2;
        for (std::size_t k = 0; k < s_grid.size(); ++k) {
            const double e = std::exp(-s_grid[k] * value);
            sum[k] += e;
            sum_sq[k] += e * e;
        }
    }
    const double m = static_cast<double>(spec.mc_samples_per_term);
    TermEstimate est;
    for (std::size_t k = 0; k < s_grid.size(); ++k) {
        const double mean = sum[k] / m;
        const double var = std::max(0.0, (sum_sq[k] - m * mean * mean) / (m - 1.0));
        est.mean.push_back(mean);
        est.variance.push_back(var / m);
    }
    return est;
}

// (1/S) * integral over the window of E[exp(-s f(x))] for one single.
double single_atom_term(double s, const Window& window, Point2D observer, const PathLossModel& pl,
                        FadingMode fading, const QuadratureSpec& quad) {
    if (s == 0.0) return 1.0;
    const double R = pl.exclusion_radius;
    // 1 - E[exp(-s nu c)] with c = r^-beta for r > R, else 0.
    auto loss = [&](double x, double y) {
        const double dx = x - observer.x, dy = y - observer.y;
        const double r2 = dx * dx + dy * dy;
        if (r2 <= R * R) return 0.0;
        const double sc = s * pl.power * std::pow(r2, -0.5 * pl.beta);
        if (!std::isfinite(sc)) return 1.0;
        return fading == FadingMode::rayleigh ? sc / (1.0 + sc) : -std::expm1(-sc);
    };
    const Point2D lo = window.min_corner();
    const Point2D hi = window.max_corner();
    auto column = [&](double x) {
        const double dx = x - observer.x;
        std::vector<double> cuts{observer.y};
        if (std::fabs(dx) < R) {
            const double h = std::sqrt(R * R - dx * dx);
            cuts.push_back(observer.y - h);
            cuts.push_back(observer.y + h);
        }
        auto f = [&](double y) { return loss(x, y); };
        return checked(integrate(f, lo.y, hi.y, 0.0, 0.1 * quad.rel_tol, quad.max_subdivisions, cuts),
                       "laplace_transform_singles")
            .value;
    };
    const std::vector<double> cuts{observer.x - R, observer.x, observer.x + R};
    const auto total = checked(integrate(column, lo.x, hi.x, quad.abs_tol, quad.rel_tol,
                                         quad.max_subdivisions, cuts),
                               "laplace_transform_singles");
    return 1.0 - total.value / window.area();
}

LaplaceSeries laplace_series(Field field, double lambda, const Window& window, Point2D observer,
                             const PathLossModel& pl, const CooperationScheme& scheme,
                             const LaplaceSeriesSpec& spec) {
    validate(pl);
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw std::domain_error("lambda must be >= 0");
    if (!window.contains(observer)) throw std::domain_error("observer outside window");
    if (spec.mc_samples_per_term < 1000)
        throw std::domain_error("mc_samples_per_term must be at least 1000");
    if (spec.epsilon <= 0.0 || spec.epsilon >= 1.0) throw std::domain_error("epsilon must lie in (0, 1)");
    for (double s : spec.s_grid)
        if (!(s >= 0.0) || !std::isfinite(s)) throw std::domain_error("s grid must be finite and >= 0");

    LaplaceSeries out;
    out.mean_count = lambda * window.area();
    if (spec.n_max) {
        out.n_max = *spec.n_max;
        if (out.n_max > kMaxSeriesTerms)
            throw NumericError("n_max exceeds the supported number of series terms");
        if (poisson_upper_tail(out.n_max, out.mean_count) >= spec.epsilon) {
            std::ostringstream msg;
            msg << "truncation at n_max = " << out.n_max << " leaves Poisson tail "
                << poisson_upper_tail(out.n_max, out.mean_count) << " >= " << spec.epsilon
                << "; required n_max = " << series_truncation(out.mean_count, spec.epsilon);
            throw NumericError(msg.str());
        }
    } else {
        out.n_max = series_truncation(out.mean_count, spec.epsilon);
    }
    out.tail_bound = poisson_upper_tail(out.n_max, out.mean_count);

    const std::size_t n_s = spec.s_grid.size();
    const std::size_t first_mc = field == Field::singles ? 3 : 2;
    std::vector<TermEstimate> terms(out.n_max + 1);
    parallel_for(out.n_max + 1, spec.threads, [&](std::size_t n) {
        auto& t = terms[n];
        if (n >= first_mc) {
            t = monte_carlo_term(field, n, window, observer, pl, scheme, spec);
            return;
        }
        t.mean.assign(n_s, 1.0);
        t.variance.assign(n_s, 0.0);
        if (field == Field::singles && n == 1)
            for (std::size_t k = 0; k < n_s; ++k)
                t.mean[k] = single_atom_term(spec.s_grid[k], window, observer, pl, spec.fading, spec.quad);
    });

    // Poisson weights, from the log pmf to survive large means.
    std::vector<double> weight(out.n_max + 1);
    for (std::size_t n = 0; n <= out.n_max; ++n) {
        const double k = static_cast<double>(n);
        weight[n] = out.mean_count == 0.0
                        ? (n == 0 ? 1.0 : 0.0)
                        : std::exp(-out.mean_count + k * std::log(out.mean_count) - std::lgamma(k + 1.0));
    }

    for (std::size_t k = 0; k < n_s; ++k) {
        double value = 0.0, var = 0.0;
        for (std::size_t n = 0; n <= out.n_max; ++n) {
            value += weight[n] * terms[n].mean[k];
            var += weight[n] * weight[n] * terms[n].variance[k];
        }
        out.points.push_back({spec.s_grid[k], value, std::sqrt(var)});
    }
    return out;
}

}  // namespace

LaplaceSeries laplace_transform_singles(double lambda, const Window& window, Point2D observer,
                                        const PathLossModel& pl, const LaplaceSeriesSpec& spec) {
    return laplace_series(Field::singles, lambda, window, observer, pl, CooperationScheme::nc(), spec);
}

LaplaceSeries laplace_transform_pairs(double lambda, const Window& window, Point2D observer,
                                      const PathLossModel& pl, const CooperationScheme& scheme,
                                      const LaplaceSeriesSpec& spec) {
    return laplace_series(Field::pairs, lambda, window, observer, pl, scheme, spec);
}

}  // namespace mnnr
