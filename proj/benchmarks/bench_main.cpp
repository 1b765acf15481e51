#include <benchmark/benchmark.h>

#include "pefill/ball_volume.hpp"
#include "pefill/curvature.hpp"
#include "pefill/einstein_ode.hpp"
#include "pefill/renormalized_volume.hpp"
#include "pefill/schwarzschild.hpp"
#include "pefill/yamabe.hpp"

using namespace pefill;

static void BM_SeriesSeed(benchmark::State& state) {
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(series_seed(3, order));
}
BENCHMARK(BM_SeriesSeed)->Arg(31)->Arg(101);

static void BM_IntegrateProfiles(benchmark::State& state) {
    auto seed = series_seed(3, 21);
    for (auto _ : state)
        benchmark::DoNotOptimize(integrate_profiles(3, seed, 1.0, 10.0, 1e-10));
}
BENCHMARK(BM_IntegrateProfiles);

static void BM_ExportProfile(benchmark::State& state) {
    auto prm = params_from_horizon(3, 1.0, 2.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(export_profile(prm, 10.0));
}
BENCHMARK(BM_ExportProfile);

static void BM_CurvatureReport(benchmark::State& state) {
    auto p = export_profile(params_from_horizon(3, 1.0, 2.0), 10.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(full_curvature_report(p));
}
BENCHMARK(BM_CurvatureReport);

static void BM_RenormalizedVolume(benchmark::State& state) {
    auto chart = build_chart(params_from_horizon(3, 1.0, 2.0));
    for (auto _ : state)
        benchmark::DoNotOptimize(extract_renormalized_volume(chart));
}
BENCHMARK(BM_RenormalizedVolume);

static void BM_Yamabe(benchmark::State& state) {
    const std::size_t grid = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(yamabe_product(3, 1.0, grid));
}
BENCHMARK(BM_Yamabe)->Arg(128)->Arg(512);

static void BM_BallVolume(benchmark::State& state) {
    const std::size_t samples = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(quotient_ball_volume(1.0, 0.0, 2.0, samples, 7));
}
BENCHMARK(BM_BallVolume)->Arg(100000)->Arg(1000000);

BENCHMARK_MAIN();
