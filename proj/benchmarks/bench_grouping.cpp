#include "mnnr/grouping.hpp"
#include "mnnr/point_process.hpp"
#include "mnnr/spatial_index.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <limits>

using namespace mnnr;

namespace {

PointPattern pattern_with(std::int64_t expected) {
    const double side = std::sqrt(static_cast<double>(expected));
    return sample_ppp(1.0, Window::square(side), SeedSpec{42, 0, 0});
}

void BM_SamplePpp(benchmark::State& state) {
    const double side = std::sqrt(static_cast<double>(state.range(0)));
    std::uint64_t stream = 0;
    for (auto _ : state) {
        auto p = sample_ppp(1.0, Window::square(side), SeedSpec{42, stream++, 0});
        benchmark::DoNotOptimize(p);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_NearestGrid(benchmark::State& state) {
    const auto p = pattern_with(state.range(0));
    for (auto _ : state) {
        auto nn = build_nn_map(p, GuardMargin{});
        benchmark::DoNotOptimize(nn);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.size()));
}

void BM_NearestBruteForce(benchmark::State& state) {
    const auto p = pattern_with(state.range(0));
    std::vector<std::size_t> nn(p.size());
    for (auto _ : state) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < p.size(); ++j) {
                if (j == i) continue;
                const double d = euclidean(p[i], p[j]);
                if (d < best) {
                    best = d;
                    nn[i] = j;
                }
            }
        }
        benchmark::DoNotOptimize(nn.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.size()));
}

void BM_Classify(benchmark::State& state) {
    const auto p = pattern_with(state.range(0));
    const int k = static_cast<int>(state.range(1));
    for (auto _ : state) {
        auto g = classify(p, Toroidal{}, k);
        benchmark::DoNotOptimize(g);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.size()));
}

}  // namespace

BENCHMARK(BM_SamplePpp)->RangeMultiplier(10)->Range(1000, 1000000);
BENCHMARK(BM_NearestGrid)->RangeMultiplier(10)->Range(1000, 1000000);
BENCHMARK(BM_NearestBruteForce)->RangeMultiplier(4)->Range(256, 4096);
BENCHMARK(BM_Classify)->ArgsProduct({{1000, 100000}, {2, 3}});

BENCHMARK_MAIN();
