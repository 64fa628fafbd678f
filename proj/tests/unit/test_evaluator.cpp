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

#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "patrol/defend.hpp"
#include "patrol/evaluator.hpp"
#include "patrol/polysolve.hpp"

using namespace patrol;

namespace {

FiniteMemoryStrategy uniform_walk(const PatrollingGame& g) {
    FiniteMemoryStrategy f;
    f.memory = 1;
    f.next = {std::vector<std::uint64_t>(g.nodes, 0)};
    Distribution d;
    for (NodeId u = 0; u < g.nodes; ++u) d.emplace_back(u, 1.0 / static_cast<double>(g.nodes));
    f.emit = {std::vector<Distribution>(g.nodes, d)};
    return f;
}

PatrollingGame mixed_game() { return fully_connected_game(Signature({{2, 2}, {3, 3}})); }

}  // namespace

TEST_CASE("uniform strategies on {2:3} and {2:2, 3:3}") {
    // Left: 1 - (2/3)^2 = 5/9.  Right: 1 - (4/5)^2 = 9/25.
    auto left = oracle::uniform_game(3, 2);
    auto right = mixed_game();
    CHECK(std::fabs(value_finite_memory(uniform_walk(left), left).value - 5.0 / 9.0) < 1e-15);
    CHECK(std::fabs(value_finite_memory(uniform_walk(right), right).value - 9.0 / 25.0) < 1e-15);
    CHECK(std::fabs(oracle_value_by_path_enumeration(uniform_walk(left), left).value - 5.0 / 9.0) < 1e-15);

    auto m = expand_explicit(StrategyExpr::circle({1, 3}, 3, 1), {});
    CHECK(std::fabs(value_modular(m, left).value - 5.0 / 9.0) < 1e-15);
    auto m5 = expand_explicit(StrategyExpr::circle({1, 5}, 5, 1), {});
    CHECK(std::fabs(value_modular(m5, right).value - 9.0 / 25.0) < 1e-15);
}

TEST_CASE("optimal strategies on {2:3} and {2:2, 3:3}") {
    auto left = oracle::uniform_game(3, 2);
    auto r = synthesize_from_signature(Signature({{2, 3}}));
    auto sol = solve_equations(system_of(r));
    auto m = expand_explicit(r.expr, full_valuation(r, sol.valuation));
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    CHECK(value_modular(m, left).value == doctest::Approx(golden).epsilon(1e-12));
    auto f = to_finite_memory(m, left);
    CHECK(value_finite_memory(f, left).value == doctest::Approx(golden).epsilon(1e-12));

    auto right = mixed_game();
    auto w = synthesize_from_signature(signature_of(right));
    auto mr = expand_explicit(w.expr, full_valuation(w));
    CHECK(std::fabs(value_modular(mr, right).value - 0.5) < 1e-12);
    CHECK(std::fabs(oracle_value_by_path_enumeration(to_finite_memory(mr, right), right).value - 0.5) < 1e-12);
}

TEST_CASE("attack values at one phase") {
    auto g = oracle::uniform_game(2, 2);
    auto m = expand_explicit(StrategyExpr::circle({1, 2}, 1, 1), {});
    CHECK(attval_modular(m, g, 0, 0) == 1.0);
    CHECK(attval_modular(m, g, 1, 1) == 1.0);
    auto lazy = expand_explicit(StrategyExpr::circle({1, 1}, 1, 1), {});
    CHECK(attval_modular(lazy, g, 0, 1) == 0.0);
    CHECK(value_modular(lazy, g).value == 0.0);
    CHECK(value_modular(lazy, g).target == 1);
    CHECK_THROWS_AS(attval_modular(m, g, 2, 0), DomainError);
}

TEST_CASE("value_modular agrees with phase-by-phase evaluation") {
    gen::Rng rng(101);
    for (int t = 0; t < 300; ++t) {
        auto g = gen::open_game(rng, gen::uniform(rng, 1, 14), 6);
        int vars = 0;
        auto e = gen::expr(rng, g.nodes, 3, vars);
        auto m = expand_explicit(e, gen::valuation(rng, e));
        auto v = value_modular(m, g);
        CHECK(v.value == doctest::Approx(oracle::value_modular(m, g)).epsilon(1e-12));
        CHECK(attval_modular(m, g, v.phase, v.target) == doctest::Approx(v.value).epsilon(1e-12));
    }
}

TEST_CASE("finite-memory value agrees with path enumeration") {
    gen::Rng rng(202);
    for (int t = 0; t < 200; ++t) {
        auto g = gen::sparse_game(rng, gen::uniform(rng, 1, 5), 4, 0.5);
        auto f = gen::finite_memory(rng, g, gen::uniform(rng, 1, 3));
        auto a = value_finite_memory(f, g);
        auto b = oracle_value_by_path_enumeration(f, g);
        CHECK(std::fabs(a.value - b.value) <= 1e-12);
        CHECK(a.reachable_states == reachable_states(f, g).size());
    }
}

TEST_CASE("path enumeration guards its size") {
    auto big = oracle::uniform_game(9, 2);
    CHECK_THROWS_AS(oracle_value_by_path_enumeration(uniform_walk(big), big), SizeLimitError);
    auto deep = oracle::uniform_game(2, 6);
    CHECK_THROWS_AS(oracle_value_by_path_enumeration(uniform_walk(deep), deep), SizeLimitError);
}

TEST_CASE("reachability starts at the initial state") {
    auto g = oracle::uniform_game(3, 2);
    auto states = reachable_states(uniform_walk(g), g);
    REQUIRE_FALSE(states.empty());
    CHECK(states.front() == ReachState{0, g.init});
    CHECK(states.size() == 3);
}
