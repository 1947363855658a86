// Serial reference vs OpenMP paths of the two parallel kernels.

#include "generators.hpp"
#include "tropk4/bitangents.hpp"
#include "tropk4/puiseux.hpp"

#include <benchmark/benchmark.h>

using namespace tropk4;

namespace {

const QuarticInput& generic_input() {
    static const QuarticInput q = [] {
        std::mt19937_64 rng(11);
        return gen::random_generic_honeycomb(rng);
    }();
    return q;
}

void BM_VerifyGrouping(benchmark::State& state) {
    bool parallel = state.range(0) != 0;
    const auto& q = generic_input();
    for (auto _ : state) benchmark::DoNotOptimize(verify_grouping(q, parallel).buckets.size());
    state.SetLabel(parallel ? "openmp" : "serial");
}

void BM_SolveBitangents(benchmark::State& state) {
    SolverOptions o;
    o.depth = static_cast<int>(state.range(1));
    o.parallel = state.range(0) != 0;
    Poly f = quartic_poly(example_quartic());
    for (auto _ : state) benchmark::DoNotOptimize(solve_bitangents(f, o).branches.size());
    state.SetLabel(o.parallel ? "openmp" : "serial");
}

}  // namespace

BENCHMARK(BM_VerifyGrouping)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SolveBitangents)
    ->Args({0, 3})
    ->Args({1, 3})
    ->Args({0, 6})
    ->Args({1, 6})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
