// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <random>

#include "vilfra/frames.hpp"
#include "vilfra/refinable.hpp"
#include "vilfra/stepfunc.hpp"
#include "vilfra/trees.hpp"

using namespace vilfra;

namespace {

StepFunctionG random_signal(int p, int support, int resolution) {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> nd;
    StepFunctionG f(GroupParams(p), support, resolution);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = {nd(rng), nd(rng)};
    return f;
}

// args: p, width
void BM_ForwardFast(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0)), w = static_cast<int>(state.range(1));
    const StepFunctionG f = random_signal(p, w / 2, w - w / 2);
    for (auto _ : state) benchmark::DoNotOptimize(forward_transform(f));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}

void BM_ForwardDense(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0)), w = static_cast<int>(state.range(1));
    const StepFunctionG f = random_signal(p, w / 2, w - w / 2);
    for (auto _ : state) benchmark::DoNotOptimize(reference::forward_transform(f));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}

// args: p, N, H
void BM_TilingSearch(benchmark::State& state) {
    const RefinableFunction r = build_refinable(generate(GroupParams(static_cast<int>(state.range(0))),
                                                         static_cast<int>(state.range(1)),
                                                         static_cast<int>(state.range(2)), {.seed = 1}));
    for (auto _ : state) benchmark::DoNotOptimize(tiling_search(r));
}

// args: p, width
void BM_AnalyzeSynthesize(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0)), w = static_cast<int>(state.range(1));
    const FrameSystem fs = tiling_search(build_refinable(generate(GroupParams(p), 2, 4, {.seed = 7})));
    const StepFunctionG f = random_signal(p, w / 2, w - w / 2);
    for (auto _ : state) {
        const CoefficientTable ct = analyze(f, fs);
        benchmark::DoNotOptimize(synthesize_partial(ct, fs));
    }
}

}  // namespace

BENCHMARK(BM_ForwardFast)->Args({2, 8})->Args({2, 12})->Args({2, 16})->Args({3, 6})->Args({3, 10})->Args({5, 4})->Args({5, 7});
BENCHMARK(BM_ForwardDense)->Args({2, 8})->Args({2, 12})->Args({3, 6})->Args({5, 4});
BENCHMARK(BM_TilingSearch)->Args({2, 2, 3})->Args({3, 2, 4})->Args({3, 2, 6})->Args({5, 2, 6});
BENCHMARK(BM_AnalyzeSynthesize)->Args({3, 4})->Args({3, 6});

BENCHMARK_MAIN();
