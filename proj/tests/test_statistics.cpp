#include "mnnr/statistics.hpp"

#include "mnnr/analytic.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace mnnr;

namespace {

ReplicationPlan small_plan(std::size_t reps, BoundaryPolicy policy = GuardMargin{3.0}) {
    ReplicationPlan plan;
    plan.n_replications = reps;
    plan.lambda = 1.0;
    plan.window = Window::square(20.0);
    plan.policy = policy;
    plan.seed = SeedSpec{11, 0, 0};
    return plan;
}

}  // namespace

TEST_SUITE("statistics") {

TEST_CASE("plan validation") {
    auto plan = small_plan(0);
    CHECK_THROWS_AS(validate_plan(plan), std::domain_error);
    plan = small_plan(1, GuardMargin{10.0});
    CHECK_THROWS_AS(validate_plan(plan), std::domain_error);
    CHECK_NOTHROW(validate_plan(small_plan(1)));
}

TEST_CASE("radius grids") {
    const auto g = radius_grid(2.0, 5);
    CHECK(g == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
    const auto d = default_radius_grid(4.0);
    CHECK(d.size() == 64);
    CHECK(d.back() == doctest::Approx(1.0));
}

TEST_CASE("pooled ratio estimator") {
    const std::vector<double> num{3, 5, 4}, den{10, 10, 10};
    const auto p = pooled_ratio(num, den);
    CHECK(p.value == doctest::Approx(0.4));
    CHECK(p.std_error > 0.0);
    const std::vector<double> one_num{3}, one_den{10};
    CHECK(pooled_ratio(one_num, one_den).std_error == doctest::Approx(std::sqrt(0.3 * 0.7 / 10)));
}

TEST_CASE("class fractions and Voronoi shares partition unity") {
    const auto plan = small_plan(20);
    const auto fr = estimate_class_fractions(plan);
    CHECK(fr.single.value + fr.paired.value == doctest::Approx(1.0));
    CHECK(fr.n_replications == 20);
    CHECK(fr.paired.value == doctest::Approx(p_star()).epsilon(0.05));
    const auto vs = estimate_voronoi_shares(plan, 500);
    CHECK(vs.singles.value + vs.pairs.value == doctest::Approx(1.0));
    CHECK(vs.n_probes == 20 * 500);
}

TEST_CASE("curves are monotone cdfs on the requested grid") {
    const auto plan = small_plan(10);
    const auto radii = radius_grid(2.0, 21);
    for (auto which : {ProcessSelector::singles(), ProcessSelector::pairs(), ProcessSelector::all()}) {
        const auto g = estimate_nn_function(plan, which, radii);
        const auto f = estimate_empty_space(plan, which, radii, 200);
        REQUIRE(g.radii == radii);
        CHECK(g.values.front() == 0.0);
        for (std::size_t k = 1; k < radii.size(); ++k) {
            CHECK(g.values[k] >= g.values[k - 1]);
            CHECK(f.values[k] >= f.values[k - 1]);
            CHECK(g.values[k] <= 1.0);
        }
    }
}

TEST_CASE("j_function") {
    EmpiricalCurve g{{0, 1, 2}, {0, 0.5, 0.9999}, {0, 0.01, 0.01}, 10, 0};
    EmpiricalCurve f{{0, 1, 2}, {0, 0.25, 0.9999}, {0, 0.01, 0.01}, 10, 0};
    const auto j = j_function(g, f);
    REQUIRE(j.radii.size() == 2);  // 1 - F < 1e-3 at r = 2
    CHECK(j.values[0] == 1.0);
    CHECK(j.values[1] == doctest::Approx(0.5 / 0.75));
    f.radii = {0, 1, 3};
    CHECK_THROWS_AS(j_function(g, f), std::domain_error);
}

TEST_CASE("poisson cdf") {
    CHECK(poisson_cdf(2, 1.0) == doctest::Approx(0.9196986029286058).epsilon(1e-13));
    CHECK(poisson_cdf(0, 3.0) == doctest::Approx(std::exp(-3.0)).epsilon(1e-13));
}

TEST_CASE("KS test accepts Poisson data and rejects under-dispersed data") {
    Rng rng(SeedSpec{8, 0, 0});
    std::vector<std::uint64_t> poisson(500), binomial(500);
    for (auto& c : poisson) c = rng.poisson(40.0);
    for (auto& c : binomial) {
        c = 0;
        for (int k = 0; k < 50; ++k) c += rng.uniform() < 0.8;  // mean 40, variance 8
    }
    const auto accept = ks_poisson_test(poisson, SeedSpec{8, 1, 0}, 199);
    const auto reject = ks_poisson_test(binomial, SeedSpec{8, 2, 0}, 199);
    CHECK(accept.p_value > 0.01);
    CHECK(reject.p_value < 0.01);
    CHECK(accept.n == 500);
    // Worker count does not change the bootstrap.
    CHECK(ks_poisson_test(binomial, SeedSpec{8, 2, 0}, 199, 4).p_value == reject.p_value);
}

TEST_CASE("KS count test needs at least 100 replications") {
    CHECK_THROWS_AS(ks_poisson_count_test(small_plan(50), ProcessSelector::singles(), 99),
                    std::domain_error);
}

TEST_CASE("reference process is an independent thinning at the requested density") {
    const auto plan = small_plan(30, Toroidal{});
    const double lam1 = 0.3785;
    double total = 0.0;
    for (std::size_t r = 0; r < plan.n_replications; ++r) {
        const auto real = realize(plan, r);
        total += static_cast<double>(select_process(plan, r, real, ProcessSelector::reference(lam1)).size());
    }
    const double expected = lam1 * plan.window.area() * plan.n_replications;
    CHECK(std::fabs(total - expected) < 5.0 * std::sqrt(expected));
}

}
