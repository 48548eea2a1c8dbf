#include "betamedian/analysis.hpp"
#include "betamedian/approximation.hpp"
#include "betamedian/median_solver.hpp"
#include "betamedian/special_functions.hpp"

#include <benchmark/benchmark.h>

using namespace betamedian;

static void BM_LogGamma(benchmark::State& state) {
    double x = 0.37;
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_gamma(x));
        x = x < 1e6 ? x * 1.7 : 0.37;
    }
}
BENCHMARK(BM_LogGamma);

static void BM_RegIncBeta(benchmark::State& state) {
    const double s = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(reg_inc_beta(0.3, s, 2.0 * s));
    }
}
BENCHMARK(BM_RegIncBeta)->RangeMultiplier(16)->Range(1, 1 << 20);

static void BM_ApproxMedian(benchmark::State& state) {
    const BetaParams p(2.5, 7.25);
    for (auto _ : state) benchmark::DoNotOptimize(approx_median_default(p));
}
BENCHMARK(BM_ApproxMedian);

static void BM_BetaMedianExact(benchmark::State& state) {
    const double s = static_cast<double>(state.range(0));
    const BetaParams p(s, 99.0 * s);
    for (auto _ : state) benchmark::DoNotOptimize(beta_median_exact(p));
}
BENCHMARK(BM_BetaMedianExact)->RangeMultiplier(8)->Range(1, 4096);

static void BM_GammaMedianExact(benchmark::State& state) {
    const double a = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(gamma_median_exact(a));
}
BENCHMARK(BM_GammaMedianExact)->RangeMultiplier(10)->Range(1, 100000);

static void BM_RelativeErrorGrid(benchmark::State& state) {
    const GridSpec grid = default_relative_error_grid();
    AnalysisOptions options;
    options.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(relative_error_curves(grid, options));
}
BENCHMARK(BM_RelativeErrorGrid)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
