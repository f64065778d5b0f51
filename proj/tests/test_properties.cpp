#include "mnnr/grouping.hpp"
#include "mnnr/interference.hpp"
#include "mnnr/spatial_index.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace mnnr;

// Invariants checked over many seeded random patterns.

namespace {

constexpr int kTrials = 150;

PointPattern trial_pattern(Rng& rng, const Window& w) {
    const auto n = static_cast<std::size_t>(2 + rng.uniform() * 400);
    return oracle::random_pattern(n, w, rng);
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("classification partitions the atoms") {
    Rng rng(SeedSpec{101, 0, 0});
    const Window w = Window::square(15.0);
    for (int t = 0; t < kTrials; ++t) {
        const auto p = trial_pattern(rng, w);
        for (int k : {2, 3}) {
            const auto g = classify(p, GuardMargin{}, k);
            std::vector<int> seen(p.size(), 0);
            for (auto i : g.singles) ++seen[i];
            for (const auto& pr : g.pairs)
                for (auto i : pr) ++seen[i];
            for (const auto& tr : g.triplets)
                for (auto i : tr) ++seen[i];
            REQUIRE(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
            REQUIRE(g.atom_count() == p.size());
        }
    }
}

TEST_CASE("pairs are mutual nearest neighbours with an empty lens; singles have a witness") {
    Rng rng(SeedSpec{102, 0, 0});
    const Window w = Window::square(15.0);
    for (int t = 0; t < kTrials; ++t) {
        const bool torus = t % 2 == 1;
        const BoundaryPolicy pol = torus ? BoundaryPolicy{Toroidal{}} : BoundaryPolicy{GuardMargin{}};
        const auto p = trial_pattern(rng, w);
        const auto nn = build_nn_map(p, pol);
        const auto g = classify_k2(p, nn);
        for (const auto& [a, b] : g.pairs) {
            REQUIRE(nn.nn_index[a] == b);
            REQUIRE(nn.nn_index[b] == a);
            REQUIRE(oracle::lens_empty(p, a, b, torus));
        }
        for (auto s : g.singles) REQUIRE(nn.nn_index[nn.nn_index[s]] != s);
    }
}

TEST_CASE("grouping is invariant under scaling") {
    Rng rng(SeedSpec{103, 0, 0});
    const Window w = Window::square(10.0);
    for (int t = 0; t < kTrials; ++t) {
        const auto p = trial_pattern(rng, w);
        const double factor = 0.25 + 4.0 * rng.uniform();
        REQUIRE(classify(p.scaled(factor), GuardMargin{}) == classify(p, GuardMargin{}));
    }
}

TEST_CASE("toroidal grouping is invariant under cyclic translation") {
    Rng rng(SeedSpec{104, 0, 0});
    const Window w = Window::square(8.0);
    for (int t = 0; t < kTrials; ++t) {
        const auto p = trial_pattern(rng, w);
        const double sx = 8.0 * rng.uniform(), sy = 8.0 * rng.uniform();
        std::vector<Point2D> moved;
        for (const auto& q : p.points()) moved.push_back({std::fmod(q.x + sx, 8.0), std::fmod(q.y + sy, 8.0)});
        const PointPattern shifted(moved, w, p.density_lambda());
        const auto a = classify(p, Toroidal{});
        const auto b = classify(shifted, Toroidal{});
        // Rounding in the shift may break exact distance ties; none occur for
        // continuous coordinates, so the groupings must agree.
        REQUIRE(a == b);
    }
}

TEST_CASE("grid nearest neighbour equals brute force on random queries") {
    Rng rng(SeedSpec{105, 0, 0});
    const Window w = Window::square(20.0);
    for (int t = 0; t < 60; ++t) {
        const bool torus = t % 2 == 0;
        const BoundaryPolicy pol = torus ? BoundaryPolicy{Toroidal{}} : BoundaryPolicy{GuardMargin{}};
        const auto p = trial_pattern(rng, w);
        const CellGrid grid(p.points(), w, pol);
        for (int q = 0; q < 50; ++q) {
            const Point2D x{20.0 * rng.uniform(), 20.0 * rng.uniform()};
            double best = INFINITY;
            for (const auto& a : p.points()) best = std::min(best, oracle::dist2(x, a, w, torus));
            REQUIRE(grid.nearest(x).squared_distance == best);
        }
    }
}

TEST_CASE("interference is monotone in R and ordered across schemes") {
    Rng rng(SeedSpec{106, 0, 0});
    const Window w = Window::centered({0, 0}, 20.0, 20.0);
    const std::vector<double> radii{0.1, 0.5, 1.0, 2.0, 4.0};
    for (int t = 0; t < 60; ++t) {
        const auto p = trial_pattern(rng, w);
        const auto g = classify(p, GuardMargin{});
        const auto draws = draw_links(p.size(), g.pairs.size(), 1.0, FadingMode::rayleigh, rng);
        const PathLossModel pl{3.5, 1.0, 0.0};
        const auto nc = interference_profile(p, g, {0.01, 0.02}, CooperationScheme::nc(), pl, draws, radii);
        const auto of1 = interference_profile(p, g, {0.01, 0.02}, CooperationScheme::of1(), pl, draws, radii);
        const auto ph = interference_profile(p, g, {0.01, 0.02}, CooperationScheme::ph(), pl, draws, radii);
        for (std::size_t k = 0; k < radii.size(); ++k) {
            REQUIRE(of1[k].i2 <= nc[k].i2);
            REQUIRE(ph[k].i2 <= 2.0 * nc[k].i2 * (1.0 + 1e-12));
            if (k > 0) {
                REQUIRE(nc[k].i1 <= nc[k - 1].i1);
                REQUIRE(nc[k].i2 <= nc[k - 1].i2);
            }
        }
    }
}

TEST_CASE("empirical Laplace transform lies in [0, 1] and decreases in s") {
    Rng rng(SeedSpec{107, 0, 0});
    std::vector<double> x(500);
    for (auto& v : x) v = rng.exponential(1.0) * 10.0 * rng.uniform();
    const std::vector<double> s{0.0, 0.01, 0.1, 1.0, 10.0, 100.0};
    const auto lt = empirical_laplace(x, s);
    for (std::size_t k = 0; k < s.size(); ++k) {
        REQUIRE(lt[k].value >= 0.0);
        REQUIRE(lt[k].value <= 1.0);
        if (k > 0) REQUIRE(lt[k].value <= lt[k - 1].value);
    }
}

}
