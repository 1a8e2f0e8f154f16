#include "fricke/famgroup.hpp"
#include "fricke/modforms.hpp"
#include "fricke/qseries.hpp"

#include <benchmark/benchmark.h>

using namespace fricke;

static void BM_SeriesMul(benchmark::State& state)
{
    const long T = state.range(0);
    const FracQSeries a = e4_series(T);
    const FracQSeries b = e6_series(T);
    for (auto _ : state) {
        benchmark::DoNotOptimize(series_mul(a, b));
    }
}
BENCHMARK(BM_SeriesMul)->Arg(20)->Arg(60)->Arg(120);

static void BM_SeriesInv(benchmark::State& state)
{
    const FracQSeries d = delta_norm_series(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(series_inv(d));
    }
}
BENCHMARK(BM_SeriesInv)->Arg(20)->Arg(60);

static void BM_SiegelPower(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const IndexVector v = make_index(1, 1, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(siegel_power_series(v, 12L * n, 30));
    }
}
BENCHMARK(BM_SiegelPower)->Arg(3)->Arg(5)->Arg(7);

static void BM_FrickeSeries(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const IndexVector v = make_index(1, 2, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fricke_series(v, 30));
    }
}
BENCHMARK(BM_FrickeSeries)->Arg(5)->Arg(7)->Arg(11);

BENCHMARK_MAIN();
