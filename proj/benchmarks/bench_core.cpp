#include <benchmark/benchmark.h>

#include <cmath>

#include "muskat/diagnostics.hpp"
#include "muskat/evolution.hpp"
#include "muskat/scenarios.hpp"
#include "muskat/variational.hpp"

using namespace muskat;

namespace {

InterfaceProfile bump(int n) {
    return periodic_touching_bump(0.9 * 3.0 / (10.0 * M_PI), 1.0, n);
}

void BM_rhs_halfplane(benchmark::State& state) {
    const auto p = bump(static_cast<int>(state.range(0)));
    RhsOptions opts;
    opts.threads = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(rhs_halfplane(p, opts));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_rhs_halfplane)
    ->Args({128, 1})
    ->Args({256, 1})
    ->Args({512, 1})
    ->Args({512, 4})
    ->Args({512, 8})
    ->Unit(benchmark::kMillisecond);

void BM_lambda_dissipation(benchmark::State& state) {
    const auto p = bump(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(lambda_dissipation(p, 1));
}
BENCHMARK(BM_lambda_dissipation)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_holder_seminorm(benchmark::State& state) {
    const auto p = bump(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(holder_seminorm_fxx(p, 0.5));
}
BENCHMARK(BM_holder_seminorm)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_H_plus(benchmark::State& state) {
    const SlopeParam a(0.3);
    const auto tent = tent_candidate(a, 10.0 / a.a, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(H_plus(a, tent));
}
BENCHMARK(BM_H_plus)->Arg(1000)->Arg(4000);

void BM_step(benchmark::State& state) {
    const auto p = bump(static_cast<int>(state.range(0)));
    StepControl ctl;
    ctl.dt_init = 1e-4;
    RhsOptions opts;
    opts.threads = 8;
    for (auto _ : state) {
        SimState s{0.0, p, 0.0, 0, 0};
        benchmark::DoNotOptimize(step(s, ctl, opts));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_step)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
