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
#include "patrol/evaluator.hpp"
#include "patrol/polysolve.hpp"

using namespace patrol;

static void BM_ValueModular(benchmark::State& state) {
    const std::uint64_t k = static_cast<std::uint64_t>(state.range(0));
    Signature s({{k, 2 * k + 1}});
    auto r = synthesize_from_signature(s);
    auto sol = solve_equations(system_of(r));
    auto m = expand_explicit(r.expr, full_valuation(r, sol.valuation));
    auto g = fully_connected_game(s);
    for (auto _ : state) benchmark::DoNotOptimize(value_modular(m, g));
}
BENCHMARK(BM_ValueModular)->Arg(4)->Arg(16)->Arg(64);

static void BM_ValueFiniteMemory(benchmark::State& state) {
    Signature s({{2, 3}});
    auto r = synthesize_from_signature(s);
    auto sol = solve_equations(system_of(r));
    auto g = fully_connected_game(s);
    auto f = to_finite_memory(expand_explicit(r.expr, full_valuation(r, sol.valuation)), g);
    for (auto _ : state) benchmark::DoNotOptimize(value_finite_memory(f, g));
}
BENCHMARK(BM_ValueFiniteMemory);

BENCHMARK_MAIN();
