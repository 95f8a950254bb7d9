#include <benchmark/benchmark.h>

#include "hillrand/lyapunov.hpp"
#include "hillrand/moments.hpp"
#include "hillrand/rng.hpp"
#include "hillrand/transfer.hpp"

using namespace hillrand;

static void BM_CycleMatrix(benchmark::State& state) {
    RandomStream rs(7, 0);
    for (auto _ : state) {
        const CycleParams p{0.5 + 3.0 * rs.uniform01(), rs.uniform(-10.0, 10.0)};
        benchmark::DoNotOptimize(cycle_matrix(p));
    }
}
BENCHMARK(BM_CycleMatrix);

static void BM_AbsorbChain(benchmark::State& state) {
    const FixedAfKernel kernel(2.0);
    RandomStream rs(7, 0);
    ProductState st;
    for (auto _ : state) {
        absorb(st, kernel.at(rs.uniform(-1.0, 1.0)));
        benchmark::DoNotOptimize(st.log_norm);
    }
}
BENCHMARK(BM_AbsorbChain);

static void BM_GrowthTrialCyclesPerSec(benchmark::State& state) {
    const auto model = ForcingModel::symmetric_uniform(0.0390625, 2.0);
    const long n = state.range(0);
    std::uint64_t stream = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(growth_rate_single_trial(model, n, 42, stream++));
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_GrowthTrialCyclesPerSec)->Arg(100000);

static void BM_SineIntegral(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sine_integral(x));
        x += 0.37;
        if (x > 90.0) x = 0.1;
    }
}
BENCHMARK(BM_SineIntegral);

BENCHMARK_MAIN();
