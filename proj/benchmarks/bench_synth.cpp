/*
 * Copyright 2026 The patrol Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include "patrol/defend.hpp"
#include "patrol/polysolve.hpp"

using namespace patrol;

static void BM_SynthesizeHard(benchmark::State& state) {
    Signature s({{37248973638339152ULL, 709793170386861531ULL}});
    for (auto _ : state) benchmark::DoNotOptimize(synthesize_from_signature(s));
}
BENCHMARK(BM_SynthesizeHard);

static void BM_SolveHard(benchmark::State& state) {
    auto sys = system_of(synthesize_from_signature(Signature({{37248973638339152ULL, 709793170386861531ULL}})));
    for (auto _ : state) benchmark::DoNotOptimize(solve_equations(sys));
}
BENCHMARK(BM_SolveHard);

static void BM_SynthesizeWellFormed(benchmark::State& state) {
    Signature s;
    for (std::uint64_t k = 1; k <= static_cast<std::uint64_t>(state.range(0)); ++k) s.add(k, 3 * k);
    for (auto _ : state) benchmark::DoNotOptimize(synthesize_from_signature(s));
}
BENCHMARK(BM_SynthesizeWellFormed)->Arg(4)->Arg(16)->Arg(64);

BENCHMARK_MAIN();
