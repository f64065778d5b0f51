#include "mnnr/spatial_index.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace mnnr;

TEST_SUITE("spatial_index") {

TEST_CASE("grid nearest neighbour equals brute force") {
    Rng rng(SeedSpec{77, 0, 0});
    for (int trial = 0; trial < 60; ++trial) {
        const bool torus = trial % 2 == 1;
        const Window w({-3.0, 1.0}, 5.0 + 20.0 * rng.uniform(), 5.0 + 20.0 * rng.uniform());
        const auto n = static_cast<std::size_t>(2 + rng.uniform() * 400);
        const auto p = oracle::random_pattern(n, w, rng);
        const BoundaryPolicy pol = torus ? BoundaryPolicy{Toroidal{}} : BoundaryPolicy{GuardMargin{}};
        const CellGrid grid(p.points(), w, pol);
        const auto nn = oracle::nearest(p, torus);
        for (std::size_t i = 0; i < n; ++i) REQUIRE(grid.nearest(p[i], i).index == nn[i]);
    }
}

TEST_CASE("ties go to the lowest index") {
    // Unit lattice: every interior point has four neighbours at distance 1.
    std::vector<Point2D> pts;
    for (int y = 0; y < 6; ++y)
        for (int x = 0; x < 6; ++x) pts.push_back({x + 0.5, y + 0.5});
    const Window w = Window::square(6.0);
    const PointPattern p(pts, w, 1.0);
    for (bool torus : {false, true}) {
        const BoundaryPolicy pol = torus ? BoundaryPolicy{Toroidal{}} : BoundaryPolicy{GuardMargin{}};
        const CellGrid grid(p.points(), w, pol);
        const auto nn = oracle::nearest(p, torus);
        for (std::size_t i = 0; i < p.size(); ++i) CHECK(grid.nearest(p[i], i).index == nn[i]);
    }
}

TEST_CASE("queries at arbitrary locations and degenerate inputs") {
    const Window w = Window::square(10.0);
    const PointPattern p({{1, 1}, {9, 9}}, w, 0.02);
    const CellGrid grid(p.points(), w, GuardMargin{});
    CHECK(grid.nearest({2, 2}).index == 0);
    CHECK(grid.nearest({2, 2}).squared_distance == doctest::Approx(2.0));
    CHECK(grid.nearest({1, 1}, 0).index == 1);
    const CellGrid torus(p.points(), w, Toroidal{});
    CHECK(torus.nearest({0.2, 0.2}, 0).index == 1);  // (9,9) is 1.2*sqrt(2) away across the corner

    const PointPattern one({{5, 5}}, w, 0.01);
    const CellGrid single(one.points(), w, GuardMargin{});
    CHECK(single.nearest({5, 5}, 0).index == CellGrid::npos);
}

}
