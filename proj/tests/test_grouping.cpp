#include "mnnr/grouping.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace mnnr;

namespace {

PointPattern collinear(std::initializer_list<double> xs) {
    std::vector<Point2D> pts;
    for (double x : xs) pts.push_back({x, 0.0});
    return PointPattern(pts, Window({-1.0, -1.0}, 6.0, 2.0), 1.0);
}

const BoundaryPolicy kPlane = GuardMargin{0.0};

}  // namespace

TEST_SUITE("grouping") {

TEST_CASE("nearest-neighbour map of collinear {0, 1, 3}") {
    const auto nn = build_nn_map(collinear({0, 1, 3}), kPlane);
    CHECK(nn.nn_index == std::vector<std::size_t>{1, 0, 1});
    CHECK(nn.nn_distance[2] == doctest::Approx(2.0));
}

TEST_CASE("nearest-neighbour map needs two distinct atoms") {
    CHECK_THROWS_AS(build_nn_map(collinear({0}), kPlane), std::domain_error);
    const auto nn = build_nn_map(collinear({0, 2}), kPlane);
    CHECK(nn.nn_index == std::vector<std::size_t>{1, 0});
}

TEST_CASE("K=2 fixtures") {
    auto g = classify(collinear({0, 1, 3}), kPlane, 2);
    CHECK(g.pairs == std::vector<std::array<std::size_t, 2>>{{0, 1}});
    CHECK(g.singles == std::vector<std::size_t>{2});
    CHECK(g.triplets.empty());

    g = classify(collinear({0, 1, 2.5, 3.5}), kPlane, 2);
    CHECK(g.pairs == std::vector<std::array<std::size_t, 2>>{{0, 1}, {2, 3}});
    CHECK(g.singles.empty());

    g = classify(collinear({4, 0.5}), kPlane, 2);
    CHECK(g.pairs == std::vector<std::array<std::size_t, 2>>{{0, 1}});

    CHECK(classify(collinear({1}), kPlane, 2).singles == std::vector<std::size_t>{0});
    CHECK(classify(PointPattern({}, Window::square(1.0), 0.0), kPlane, 2).atom_count() == 0);
}

TEST_CASE("K=3 fixtures") {
    auto g = classify(collinear({0, 1, 3}), kPlane, 3);
    CHECK(g.triplets == std::vector<std::array<std::size_t, 3>>{{0, 1, 2}});
    CHECK(g.singles.empty());
    CHECK(g.pairs.empty());

    // No singles: K=3 leaves the K=2 result untouched.
    const auto p = collinear({0, 1, 2.5, 3.5});
    CHECK(classify(p, kPlane, 3) == classify(p, kPlane, 2));

    // Two singles whose nearest neighbour is the same pair member: only the
    // closer one (distance 1.5 vs 1.7) joins.
    const PointPattern q({{0, 0}, {1, 0}, {1, 1.5}, {1, -1.7}}, Window({-1, -2}, 3, 4), 1.0);
    const auto k2 = classify(q, kPlane, 2);
    REQUIRE(k2.pairs == std::vector<std::array<std::size_t, 2>>{{0, 1}});
    REQUIRE(k2.singles == std::vector<std::size_t>{2, 3});
    g = classify(q, kPlane, 3);
    CHECK(g.triplets == std::vector<std::array<std::size_t, 3>>{{0, 1, 2}});
    CHECK(g.singles == std::vector<std::size_t>{3});

    CHECK_THROWS_AS(classify(q, kPlane, 4), std::domain_error);
}

TEST_CASE("roles and subpatterns") {
    const auto p = collinear({0, 1, 3});
    const auto g = classify(p, kPlane, 2);
    const auto roles = atom_roles(g, p.size());
    CHECK(roles[0].group == GroupClass::pair);
    CHECK(roles[0].partner1 == 1);
    CHECK(roles[2].group == GroupClass::single);
    CHECK(roles[2].partner1 == static_cast<std::size_t>(-1));

    const auto pairs = subpattern(p, g, Subprocess::pairs);
    REQUIRE(pairs.size() == 2);
    CHECK(pairs.source_index(0) == 0);
    CHECK(pairs.source_index(1) == 1);
    const auto singles = subpattern(p, g, Subprocess::singles);
    REQUIRE(singles.size() == 1);
    CHECK(singles[0] == Point2D{3, 0});
    CHECK(subpattern(collinear({0, 2}), classify(collinear({0, 2}), kPlane), Subprocess::singles).empty());
    CHECK(pair_members(g) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("grid classification equals the brute-force oracle") {
    Rng rng(SeedSpec{2024, 0, 0});
    for (int trial = 0; trial < 200; ++trial) {
        const bool torus = trial % 3 == 0;
        const Window w = Window::square(10.0);
        const auto n = static_cast<std::size_t>(2 + rng.uniform() * 300);
        const auto p = oracle::random_pattern(n, w, rng);
        const BoundaryPolicy pol = torus ? BoundaryPolicy{Toroidal{}} : BoundaryPolicy{GuardMargin{}};
        REQUIRE(classify(p, pol, 2) == oracle::classify_k2(p, torus));
        REQUIRE(classify(p, pol, 3) == oracle::classify_k3(p, torus));
    }
}

}
