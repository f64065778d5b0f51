#include "mnnr/analytic.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace mnnr;

// Reference values below come from an independent reduction: integrating the
// angle between x and y in closed form, 2 pi I0(2 c |x||y|), leaves a smooth
// 2-D integral in (|x|, |y|) evaluated with QUADPACK at rel. tol. 1e-11.

TEST_SUITE("analytic") {

TEST_CASE("pair probability constants") {
    CHECK(p_star() == doctest::Approx(0.6215048968874316).epsilon(1e-14));
    CHECK(pair_probability(0.0, 1.0) == 1.0);
    CHECK(pair_probability(1.0, 0.5) == doctest::Approx(std::exp(-0.5 * 5.054815608570829)));
    CHECK(intensity_density(2.0, AtomClass::pairs) == doctest::Approx(2.0 * p_star()));
    CHECK(intensity_density(2.0, AtomClass::singles) == doctest::Approx(2.0 * (1.0 - p_star())));
}

TEST_CASE("nearest-neighbour law of pairs is Rayleigh") {
    // Scale sigma = (2 lambda pi (2 - gamma))^-1/2: median sigma sqrt(2 ln 2).
    const double lambda = 0.7;
    const double sigma = 1.0 / std::sqrt(2.0 * lambda * std::numbers::pi * (2.0 - gamma_constant()));
    CHECK(nn_cdf_pairs(sigma * std::sqrt(2.0 * std::log(2.0)), lambda) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(nn_cdf_reference(1.0, 1.0) == doctest::Approx(1.0 - std::exp(-std::numbers::pi)));
    CHECK_THROWS_AS(nn_cdf_pairs(-1.0, 1.0), std::domain_error);
}

TEST_CASE("singles closed form") {
    CHECK(expected_interference_singles_closed_form(0.1, {4.0, 1.0, 1.0}) ==
          doctest::Approx(0.11890774353581562).epsilon(1e-13));
    CHECK(expected_interference_singles_closed_form(0.1, {2.5, 1.0, 2.0}) ==
          doctest::Approx(0.33632188715906436).epsilon(1e-13));
    CHECK_THROWS_AS(expected_interference_singles_closed_form(0.1, {4.0, 1.0, 0.0}), NumericError);
    CHECK_THROWS_AS(expected_interference_singles_closed_form(0.1, {2.0, 1.0, 1.0}), std::domain_error);
}

TEST_CASE("singles quadrature equals the closed form") {
    for (double beta : {2.5, 3.0, 4.0, 6.0})
        for (double R : {0.5, 1.0, 5.0})
            for (double outer : {double(INFINITY), 30.0}) {
                CAPTURE(beta);
                CAPTURE(R);
                CAPTURE(outer);
                const PathLossModel pl{beta, 2.0, R};
                QuadratureSpec q;
                q.outer_radius = outer;
                const double quad = expected_interference_singles(0.1, pl, q);
                const double closed = expected_interference_singles_closed_form(0.1, pl, outer);
                CHECK(std::fabs(quad - closed) / closed < 1e-8);
            }
}

TEST_CASE("pairs quadrature against the Bessel-reduction oracle") {
    QuadratureSpec q;
    q.rel_tol = 1e-8;
    const auto none = FadingMode::none;
    auto rel = [](double a, double b) { return std::fabs(a - b) / b; };
    CHECK(rel(expected_interference_pairs(0.1, {4.0, 1.0, 1.0}, CooperationScheme::nc(), q, none),
              0.1646964519222425) < 1e-7);
    // The max() kink of OF1 without fading slows the adaptive rule's convergence.
    CHECK(rel(expected_interference_pairs(0.1, {4.0, 1.0, 1.0}, CooperationScheme::of1(), q, none),
              0.1262214230730696) < 1e-6);
    CHECK(rel(expected_interference_pairs(0.1, {2.5, 1.0, 1.0}, CooperationScheme::nc(), q, none),
              0.7344598026527097) < 1e-7);
    CHECK(rel(expected_interference_pairs(0.1, {2.5, 1.0, 1.0}, CooperationScheme::of1(), q, none),
              0.4460461507272733) < 1e-7);
    q.outer_radius = 20.0;
    CHECK(rel(expected_interference_pairs(0.1, {4.0, 1.0, 1.0}, CooperationScheme::nc(), q, none),
              0.16418621837561967) < 1e-7);
}

TEST_CASE("scheme relations in quadrature") {
    QuadratureSpec q;
    q.rel_tol = 1e-7;
    const PathLossModel pl{3.0, 1.0, 0.8};
    for (auto fading : {FadingMode::rayleigh, FadingMode::none}) {
        const double nc = expected_interference_pairs(0.2, pl, CooperationScheme::nc(), q, fading);
        const double ph = expected_interference_pairs(0.2, pl, CooperationScheme::ph(), q, fading);
        const double of1 = expected_interference_pairs(0.2, pl, CooperationScheme::of1(), q, fading);
        const double of2 = expected_interference_pairs(0.2, pl, CooperationScheme::of2(0.3), q, fading);
        CHECK(nc == ph);
        CHECK(of1 < nc);
        CHECK(of1 > 0.5 * nc);
        // q m_x + (1 - q) m_y integrates to half of NC by the x <-> y symmetry.
        CHECK(of2 == doctest::Approx(0.5 * nc).epsilon(1e-6));
    }
}

TEST_CASE("expected pair signal per scheme") {
    const PathLossModel pl{2.0, 1.0, 0.0};
    // m_x = 1, m_y = 0.25
    CHECK(expected_pair_signal(1.0, 2.0, pl, CooperationScheme::nc(), FadingMode::rayleigh) == 1.25);
    CHECK(expected_pair_signal(1.0, 2.0, pl, CooperationScheme::ph(), FadingMode::rayleigh) == 1.25);
    CHECK(expected_pair_signal(1.0, 2.0, pl, CooperationScheme::of2(0.2), FadingMode::none) ==
          doctest::Approx(0.2 + 0.8 * 0.25));
    CHECK(expected_pair_signal(1.0, 2.0, pl, CooperationScheme::of1(), FadingMode::none) == 1.0);
    // E[max] of exponentials with means 1 and 0.25: 1 + 0.25 - 1/(1/1 + 1/0.25).
    CHECK(expected_pair_signal(1.0, 2.0, pl, CooperationScheme::of1(), FadingMode::rayleigh) ==
          doctest::Approx(1.25 - 0.2));
}

TEST_CASE("Poisson tail and truncation") {
    CHECK(poisson_upper_tail(0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-13));
    CHECK(poisson_upper_tail(2, 1.0) == doctest::Approx(1.0 - 0.9196986029286058).epsilon(1e-12));
    const std::size_t n = series_truncation(2.0, 1e-6);
    CHECK(poisson_upper_tail(n, 2.0) < 1e-6);
    CHECK(poisson_upper_tail(n - 1, 2.0) >= 1e-6);
    CHECK_THROWS_AS(series_truncation(200.0, 1e-6), NumericError);
}

TEST_CASE("Laplace series: s = 0, monotonicity, explicit truncation") {
    const Window w = Window::centered({0, 0}, 1.5, 1.5);
    LaplaceSeriesSpec spec;
    spec.epsilon = 1e-15;
    spec.mc_samples_per_term = 2000;
    spec.s_grid = {0.0, 0.1, 1.0, 10.0, 100.0};
    spec.seed = SeedSpec{3, 0, 0};
    const PathLossModel pl{4.0, 1.0, 0.3};
    for (const auto& series : {laplace_transform_singles(1.0, w, {0, 0}, pl, spec),
                               laplace_transform_pairs(1.0, w, {0, 0}, pl, CooperationScheme::nc(), spec)}) {
        CHECK(std::fabs(series.points[0].value - 1.0) < 1e-14);
        CHECK(series.tail_bound < 1e-15);
        for (std::size_t k = 1; k < series.points.size(); ++k) {
            CHECK(series.points[k].value <= series.points[k - 1].value);
            CHECK(series.points[k].value > 0.0);
        }
    }
    spec.n_max = 3;
    CHECK_THROWS_AS(laplace_transform_singles(1.0, w, {0, 0}, pl, spec), NumericError);
    spec.n_max.reset();
    CHECK_THROWS_AS(laplace_transform_singles(1.0, w, {5, 5}, pl, spec), std::domain_error);
}

TEST_CASE("single-atom Laplace term matches a direct evaluation") {
    // With lambda S(A) = m tiny the series isolates E_1, the one-atom term,
    // which is checked against a midpoint-rule average of 1/(1 + s r^-beta).
    const Window w = Window::centered({0, 0}, 1.0, 1.0);
    const PathLossModel pl{4.0, 1.0, 0.0};
    const double s = 0.01;
    double grid = 0.0;
    const int n = 1000;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double x = -0.5 + (i + 0.5) / n, y = -0.5 + (j + 0.5) / n;
            const double c = s * std::pow(x * x + y * y, -2.0);
            grid += 1.0 / (1.0 + c);
        }
    grid /= double(n) * n;
    LaplaceSeriesSpec spec;
    spec.epsilon = 1e-12;
    spec.s_grid = {s};
    spec.mc_samples_per_term = 1000;
    const double lambda = 1e-3;
    const auto series = laplace_transform_singles(lambda, w, {0, 0}, pl, spec);
    const double m = lambda * w.area();
    // LT e^m = 1 + m E_1 + m^2/2 (two atoms always pair) + O(m^3).
    const double e1 = (series.points[0].value * std::exp(m) - 1.0 - 0.5 * m * m) / m;
    CHECK(e1 == doctest::Approx(grid).epsilon(1e-3));
}

}
