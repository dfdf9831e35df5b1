// Parallel sweep vs the serial reference, plus the per-iteration kernels.
#include <benchmark/benchmark.h>

#include "liegen/classify.hpp"

namespace {

liegen::SweepPlan bench_plan(std::size_t iters) {
    liegen::SweepPlan plan;
    plan.descent.max_iters = iters;
    return plan;
}

void BM_SweepSerial(benchmark::State& state) {
    const auto field = liegen::parse("x^2");
    const auto plan = bench_plan(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(liegen::classify_sweep_serial(field, plan));
}

void BM_SweepParallel(benchmark::State& state) {
    const auto field = liegen::parse("x^2");
    const auto plan = bench_plan(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(liegen::classify_sweep(field, plan));
}

void BM_DescentIteration(benchmark::State& state) {
    const liegen::Grid grid(10.0, static_cast<std::size_t>(state.range(0)));
    const auto gen = liegen::make_generator(liegen::parse("x^2"), grid, 1.0);
    const auto q = liegen::build_preconditioner(gen, grid);
    liegen::GridFunction g(grid.size(), 1.0);
    for (auto _ : state) {
        const auto r = liegen::residual(gen, grid, g);
        const auto d = q.solve(liegen::apply_residual_transpose(gen, grid, r));
        benchmark::DoNotOptimize(liegen::residual(gen, grid, d));
    }
    state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DescentIteration)->RangeMultiplier(2)->Range(200, 3200)->Complexity(benchmark::oN);

BENCHMARK_MAIN();
