#include <benchmark/benchmark.h>

#include "wmsim/pointer_grid.hpp"

using namespace wmsim;

namespace {

PointerSpec spec2d(int l, int n) {
    PointerSpec s;
    s.dims = 2;
    s.l = l;
    s.sigma = 1.0;
    s.grid_points = n;
    s.grid_extent = 14.0;
    return s;
}

PointerSpec spec1d(int n) {
    PointerSpec s;
    s.dims = 1;
    s.sigma = 1.0;
    s.grid_points = n;
    s.grid_extent = 12.0;
    return s;
}

}  // namespace

static void BM_MakeLgMode2D(benchmark::State& state) {
    const PointerSpec s = spec2d(2, int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(make_lg_mode(s));
}
BENCHMARK(BM_MakeLgMode2D)->Arg(128)->Arg(256)->Arg(512);

static void BM_SpectralMomentum1D(benchmark::State& state) {
    const GridWavefunction psi = make_lg_mode(spec1d(int(state.range(0))));
    const auto px = MeterObservable::custom(0, 0, 1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(apply_meter(psi, px));
}
BENCHMARK(BM_SpectralMomentum1D)->Arg(256)->Arg(1024);

static void BM_ExpectationXY(benchmark::State& state) {
    const GridWavefunction psi = make_lg_mode(spec2d(1, int(state.range(0))));
    for (auto _ : state)
        benchmark::DoNotOptimize(expectation(psi, MeterObservable::xy()));
}
BENCHMARK(BM_ExpectationXY)->Arg(256)->Arg(512);

static void BM_Moment4th(benchmark::State& state) {
    const GridWavefunction psi = make_lg_mode(spec2d(1, 256));
    for (auto _ : state) benchmark::DoNotOptimize(moment(psi, 1, 1, 1, 1));
}
BENCHMARK(BM_Moment4th);

BENCHMARK_MAIN();
