// Copyright 2026 The ghzrig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "ghzrig/diagram.hpp"
#include "ghzrig/game.hpp"
#include "ghzrig/random.hpp"
#include "ghzrig/rigidity.hpp"
#include "ghzrig/strategy.hpp"

using namespace ghzrig;

static void BM_Kron(benchmark::State &state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    Rng rng(1);
    const auto a = random_unitary(d, rng);
    const auto b = random_unitary(d, rng);
    for (auto _ : state) benchmark::DoNotOptimize(kron(a, b));
}
BENCHMARK(BM_Kron)->Arg(4)->Arg(16)->Arg(32);

static void BM_WinningProbability(benchmark::State &state) {
    const auto s = perturb(ideal_strategy(static_cast<std::size_t>(state.range(0))), {NoiseKind::Rotation, 0.1, 0});
    for (auto _ : state) benchmark::DoNotOptimize(winning_probability(s));
}
BENCHMARK(BM_WinningProbability)->Arg(1)->Arg(2)->Arg(3);

static void BM_ExtractDense(benchmark::State &state) {
    const auto s = perturb(ideal_strategy(static_cast<std::size_t>(state.range(0))), {NoiseKind::Rotation, 0.1, 0});
    for (auto _ : state) benchmark::DoNotOptimize(extract_dense(s));
}
BENCHMARK(BM_ExtractDense)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_ExtractReduced(benchmark::State &state) {
    const auto s = perturb(ideal_strategy(static_cast<std::size_t>(state.range(0))), {NoiseKind::Rotation, 0.1, 0});
    for (auto _ : state) benchmark::DoNotOptimize(extract_reduced(s));
}
BENCHMARK(BM_ExtractReduced)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_SwapDiagramEvaluate(benchmark::State &state) {
    Rng rng(2);
    const auto s = random_strategy(1, {2, 4, 2}, rng);
    const auto d = swap_isometry_diagram(s, Player::B, 1);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(d));
}
BENCHMARK(BM_SwapDiagramEvaluate);

static void BM_CheckRelations(benchmark::State &state) {
    const auto s = ideal_strategy(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(check_relations(s));
}
BENCHMARK(BM_CheckRelations)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
