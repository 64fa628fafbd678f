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
#include "patrol/strategy_expr.hpp"

using namespace patrol;

namespace {

double mass(const SparseDist& d) {
    double s = 0.0;
    for (const auto& r : d) s += r.prob * static_cast<double>(r.range.len);
    return s;
}

}  // namespace

TEST_CASE("periods") {
    auto c = StrategyExpr::circle({1, 6}, 2, 3);
    CHECK(period_of(c) == 9);
    auto s = StrategyExpr::seq(c, StrategyExpr::circle({7, 2}, 1, 1));
    CHECK(period_of(s) == 11);
    auto m = StrategyExpr::mix("p", StrategyExpr::circle({1, 2}, 1, 1), StrategyExpr::circle({3, 3}, 1, 1));
    CHECK(period_of(m) == 6);
    CHECK(m.variables() == std::vector<std::string>{"p"});
    CHECK(m.max_node() == 5);
    CHECK(m.node_count() == 3);
}

TEST_CASE("structural validation") {
    CHECK_THROWS_AS(validate_expr(StrategyExpr::circle({1, 5}, 2, 1)), ValidationError);
    CHECK_THROWS_AS(validate_expr(StrategyExpr::circle({0, 2}, 1, 1)), ValidationError);
    CHECK_THROWS_AS(validate_expr(StrategyExpr::circle({1, 2}, 1, 0)), ValidationError);
    CHECK_NOTHROW(validate_expr(StrategyExpr::circle({3, 4}, 2, 1)));
}

TEST_CASE("circle walks around its blocks") {
    // Circle(U[1,4], 2, 1): phase 0 uniform on {1,2}, phase 1 uniform on {3,4}.
    auto m = expand_explicit(StrategyExpr::circle({1, 4}, 2, 1), {});
    REQUIRE(m.period == 2);
    CHECK(m.prob(0, 1) == doctest::Approx(0.5));
    CHECK(m.prob(0, 2) == doctest::Approx(0.5));
    CHECK(m.prob(0, 3) == 0.0);
    CHECK(m.prob(1, 4) == doctest::Approx(0.5));

    // Circle(U[2,3], 1, 2): period 6, phase l on node 2 + (l mod 3).
    auto loop = expand_explicit(StrategyExpr::circle({2, 3}, 1, 2), {});
    REQUIRE(loop.period == 6);
    for (std::uint64_t l = 0; l < 6; ++l) CHECK(loop.prob(l, 2 + l % 3) == 1.0);
}

TEST_CASE("seq concatenates and mix blends") {
    auto a = StrategyExpr::circle({1, 2}, 1, 1);
    auto b = StrategyExpr::circle({3, 1}, 1, 1);
    auto s = expand_explicit(StrategyExpr::seq(a, b), {});
    REQUIRE(s.period == 3);
    CHECK(s.prob(0, 1) == 1.0);
    CHECK(s.prob(1, 2) == 1.0);
    CHECK(s.prob(2, 3) == 1.0);

    auto m = expand_explicit(StrategyExpr::mix("p", a, b), {{"p", 0.25}});
    REQUIRE(m.period == 2);
    CHECK(m.prob(0, 1) == doctest::Approx(0.75));
    CHECK(m.prob(0, 3) == doctest::Approx(0.25));
    CHECK(m.prob(1, 2) == doctest::Approx(0.75));

    // Overlapping ranges add up.
    auto same = expand_explicit(StrategyExpr::mix("q", StrategyExpr::circle({1, 4}, 4, 1), StrategyExpr::circle({3, 2}, 2, 1)),
                                {{"q", 0.5}});
    CHECK(same.prob(0, 1) == doctest::Approx(0.125));
    CHECK(same.prob(0, 3) == doctest::Approx(0.375));
    CHECK(same.dists[0].size() == 2);
}

TEST_CASE("expansion errors") {
    auto m = StrategyExpr::mix("p", StrategyExpr::circle({1, 2}, 1, 1), StrategyExpr::circle({3, 1}, 1, 1));
    CHECK_THROWS_AS(expand_explicit(m, {}), UnboundVariableError);
    CHECK_THROWS_AS(expand_explicit(m, {{"p", 1.5}}), DomainError);
    CHECK_THROWS_AS(expand_explicit(StrategyExpr::circle({1, 1000}, 1, 1), {}, 999), SizeLimitError);
    auto huge = StrategyExpr::circle({1, 1}, 1, ~std::uint64_t{0});
    CHECK(period_of(huge) == ~std::uint64_t{0});
    CHECK_THROWS_AS(period_of(StrategyExpr::seq(huge, huge)), OverflowError);
}

TEST_CASE("every phase of a random expression is a distribution") {
    gen::Rng rng(3);
    for (int t = 0; t < 300; ++t) {
        int vars = 0;
        auto e = gen::expr(rng, gen::uniform(rng, 1, 12), 3, vars);
        auto v = gen::valuation(rng, e);
        auto m = expand_explicit(e, v);
        CHECK(m.period == period_of(e));
        for (const auto& d : m.dists) {
            CHECK(std::fabs(mass(d) - 1.0) < 1e-12);
            for (std::size_t i = 1; i < d.size(); ++i) CHECK(d[i - 1].range.last() < d[i].range.start);
        }
    }
}

TEST_CASE("finite-memory form counts history length") {
    auto m = expand_explicit(StrategyExpr::circle({1, 2}, 1, 1), {});
    auto g = oracle::uniform_game(2, 2);
    auto f = to_finite_memory(m, g);
    CHECK(f.memory == 2);
    CHECK(f.init == 1);
    CHECK_NOTHROW(validate_finite_memory(f, g));
    // From the initial history (length 1) the strategy plays phase 1: node 2.
    REQUIRE(f.emit[1][0].size() == 1);
    CHECK(f.emit[1][0][0].first == 1);
    CHECK(f.next[1][1] == 0);
}

TEST_CASE("finite-memory form respects the environment") {
    PatrollingGame g;
    g.nodes = 3;
    g.targets = {0, 1, 2};
    g.init = 0;
    g.edges = {{0, 1}, {1, 0}, {1, 2}, {2, 1}};
    g.attack_len = {{0, 2}, {1, 2}, {2, 2}};
    auto walk = expand_explicit(StrategyExpr::circle({1, 2}, 1, 1), {});
    CHECK_NOTHROW(to_finite_memory(walk, g));
    auto jump = expand_explicit(StrategyExpr::circle({1, 3}, 1, 1), {});
    CHECK_THROWS_AS(to_finite_memory(jump, g), EdgeViolationError);
}

TEST_CASE("validate_finite_memory rejects malformed tables") {
    auto g = oracle::uniform_game(2, 1);
    FiniteMemoryStrategy f;
    f.memory = 1;
    f.init = 0;
    f.next = {{0, 0}};
    f.emit = {{{{0, 0.5}, {1, 0.5}}, {{0, 0.7}}}};
    CHECK_THROWS_AS(validate_finite_memory(f, g), ValidationError);
    f.emit[0][1] = {{0, 0.25}, {1, 0.75}};
    CHECK_NOTHROW(validate_finite_memory(f, g));
    f.next = {{0, 3}};
    CHECK_THROWS_AS(validate_finite_memory(f, g), ValidationError);
}

TEST_CASE("compose names its mix variables from the stem") {
    auto a = StrategyExpr::circle({1, 1}, 1, 1);
    auto b = StrategyExpr::circle({2, 1}, 1, 1);
    auto c = StrategyExpr::circle({3, 1}, 1, 1);
    auto e = compose("nu", {a, b, c});
    CHECK(e.variables() == std::vector<std::string>{"nu", "nu.2"});
    CHECK(e.kind() == StrategyExpr::Kind::Mix);
    CHECK(e.left() == a);
    CHECK(compose("nu", {a}) == a);
}
