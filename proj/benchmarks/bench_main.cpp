#include <benchmark/benchmark.h>

#include <numbers>

#include "flatctc/curves.hpp"
#include "flatctc/groups.hpp"
#include "flatctc/raster.hpp"
#include "flatctc/regions.hpp"

using namespace flatctc;

namespace {

const GroupPresentation kTorus = torus_example();

GridSpec eigen_grid(int res, int len) {
    GridSpec grid;
    grid.plane = eigenplane(kTorus.generators[0].element);
    grid.u_min = grid.v_min = -5;
    grid.u_max = grid.v_max = 5;
    grid.res_u = grid.res_v = res;
    grid.max_power = 50;
    grid.max_word_len = len;
    return grid;
}

void BM_Classify(benchmark::State& state) {
    const Isometry& g = kTorus.generators[1].element;
    for (auto _ : state) benchmark::DoNotOptimize(classify(g));
}
BENCHMARK(BM_Classify);

void BM_RegionOf(benchmark::State& state) {
    const Isometry& g = kTorus.generators[0].element;
    const MPoint p(0.3, 1.2, -0.7);
    long n = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(region_of(g, p, n));
        n = n % 50 + 1;
    }
}
BENCHMARK(BM_RegionOf);

void BM_EnumerateWords(benchmark::State& state) {
    const int len = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_words(kTorus, len));
}
BENCHMARK(BM_EnumerateWords)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_GroupSearch(benchmark::State& state) {
    const MPoint p(0, 0, 2);
    for (auto _ : state) benchmark::DoNotOptimize(group_ctc_search(kTorus, p, 6, 50));
}
BENCHMARK(BM_GroupSearch)->Unit(benchmark::kMillisecond);

void BM_GroupRaster(benchmark::State& state) {
    const GridSpec grid = eigen_grid(static_cast<int>(state.range(0)), 5);
    for (auto _ : state) benchmark::DoNotOptimize(cross_section_raster(kTorus, grid));
}
BENCHMARK(BM_GroupRaster)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_CurveSampling(benchmark::State& state) {
    const Isometry& g = kTorus.generators[0].element;
    const MPoint p(0, std::numbers::sqrt2, 0);
    for (auto _ : state) benchmark::DoNotOptimize(smooth_orbit_curve(g, p, 0.1, 200));
}
BENCHMARK(BM_CurveSampling)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
