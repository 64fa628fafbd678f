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

#include "patrol/envcheck.hpp"

using namespace patrol;

static void BM_EmbedFullyConnected(benchmark::State& state) {
    Signature s;
    for (std::uint64_t k = 1; k <= static_cast<std::uint64_t>(state.range(0)); ++k) s.add(k, k);
    auto g = fully_connected_game(s);
    for (auto _ : state) benchmark::DoNotOptimize(is_sufficiently_connected(g));
}
BENCHMARK(BM_EmbedFullyConnected)->Arg(3)->Arg(5);

static void BM_GadgetColoring(benchmark::State& state) {
    const std::vector<Hyperedge> edges = {{0, 1, 2}, {2, 3, 4}, {4, 5, 0}};
    const auto k = static_cast<std::uint32_t>(state.range(0));
    auto h = gadget_from_hypergraph(6, edges, k);
    for (auto _ : state) benchmark::DoNotOptimize(special_equitable_coloring(h, k));
}
BENCHMARK(BM_GadgetColoring)->Arg(3)->Arg(4)->Arg(5);

BENCHMARK_MAIN();
