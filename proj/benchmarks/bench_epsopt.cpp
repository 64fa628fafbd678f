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

#include "patrol/epsopt.hpp"

using namespace patrol;

static void BM_EpsOptimal(benchmark::State& state) {
    auto g = fully_connected_game(Signature({{2, 3}}));
    EpsLimits limits;
    limits.max_grid = 30;
    for (auto _ : state) benchmark::DoNotOptimize(synthesize_eps_optimal(g, Rational(1, 5), limits));
}
BENCHMARK(BM_EpsOptimal)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
