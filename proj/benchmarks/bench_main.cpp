#include "delaystab/kuramoto.hpp"
#include "delaystab/linalg.hpp"
#include "delaystab/networks.hpp"
#include "delaystab/presets.hpp"
#include "delaystab/regions.hpp"
#include "delaystab/scc.hpp"
#include "delaystab/simulate.hpp"

#include <benchmark/benchmark.h>

using namespace delaystab;

static void BM_NuContour(benchmark::State& state) {
    const CharFun F = presets::example2();
    for (auto _ : state) benchmark::DoNotOptimize(nu_contour(F, cplx{1.3, 2.7}));
}
BENCHMARK(BM_NuContour);

static void BM_TraceWindow(benchmark::State& state) {
    const CharFun F = presets::mas(1, 1, 1, 1.1, 0.3);
    for (auto _ : state) benchmark::DoNotOptimize(trace_window(F, Window{-6, 1, -3, 3}));
}
BENCHMARK(BM_TraceWindow)->Unit(benchmark::kMillisecond);

static void BM_NuMap(benchmark::State& state) {
    const CharFun F = presets::example2();
    const Window w{-1, 3, -1, 7};
    const TracedCurves curves = trace_window(F, w);
    const int res = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(nu_map(F, w, res, res, curves.branches));
}
BENCHMARK(BM_NuMap)->Arg(41)->Arg(201)->Unit(benchmark::kMillisecond);

static void BM_Eigenvalues(benchmark::State& state) {
    const CMatrix J = network_matrix(RandomNet{static_cast<int>(state.range(0)), 2.0, 0.3, 1});
    for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(J));
}
BENCHMARK(BM_Eigenvalues)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_ScalarDelaySimulation(benchmark::State& state) {
    SimConfig cfg;
    cfg.store_states = false;
    for (auto _ : state) benchmark::DoNotOptimize(simulate_scalar_discrete(1.0, 0.0, -1.5, 0.5, cfg));
}
BENCHMARK(BM_ScalarDelaySimulation)->Unit(benchmark::kMillisecond);

static void BM_MasSimulation(benchmark::State& state) {
    const CMatrix J = network_matrix(RandomNet{100, 2.0, 0.1, 1});
    SimConfig cfg;
    cfg.dt = 0.05;
    cfg.horizon = 100.0;
    cfg.record_every = 20;
    cfg.store_states = false;
    cfg.history.kind = HistorySpec::Kind::random_uniform;
    for (auto _ : state) benchmark::DoNotOptimize(simulate_mas(1, 1, 1, 1.1, 0.05, J, cfg));
}
BENCHMARK(BM_MasSimulation)->Unit(benchmark::kMillisecond);

static void BM_Kuramoto(benchmark::State& state) {
    KuramotoConfig cfg;
    cfg.N = static_cast<int>(state.range(0));
    cfg.horizon = 2.0;
    cfg.control_on = 0.0;
    cfg.C = -1.0;
    cfg.S = -3.0;
    cfg.delay.kind = KuramotoDelay::Kind::exponential;
    for (auto _ : state) benchmark::DoNotOptimize(simulate_kuramoto(cfg));
}
BENCHMARK(BM_Kuramoto)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
