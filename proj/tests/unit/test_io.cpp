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

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "patrol/io.hpp"
#include "patrol/polysolve.hpp"

using namespace patrol;
using io::json;

namespace {

std::string data(const char* name) { return std::string(PATROL_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("game files") {
    auto g = io::game_from_json(io::read_json_file(data("mixed_game.json")));
    CHECK(g.nodes == 5);
    CHECK(g.fully_connected);
    CHECK(g.attack_length(4) == 3);
    CHECK(io::game_from_json(io::to_json(g)).attack_len == g.attack_len);

    auto p = io::game_from_json(io::read_json_file(data("path3_game.json")));
    CHECK(p.edges.size() == 7);
    CHECK(io::to_json(io::game_from_json(io::to_json(p))) == io::to_json(p));

    json bad = io::to_json(g);
    bad.erase("attack_len");
    CHECK_THROWS_WITH_AS(io::game_from_json(bad), "missing field 'attack_len'", ValidationError);
    bad = io::to_json(g);
    bad["nodes"] = -1;
    CHECK_THROWS_AS(io::game_from_json(bad), ValidationError);
}

TEST_CASE("signature files keep 64-bit counts") {
    auto s = io::signature_from_json(io::read_json_file(data("hard_signature.json")));
    CHECK(s.count(37248973638339152ULL) == 709793170386861531ULL);
    CHECK(io::signature_from_json(io::to_json(s)) == s);
    CHECK(io::signature_from_json(json::parse(R"({"2": 3})")) == Signature({{2, 3}}));
    CHECK_THROWS_AS(io::signature_from_json(json::parse(R"({"2": "x"})")), ValidationError);
    CHECK_THROWS_AS(io::signature_from_json(json::parse(R"({"0": "3"})")), ValidationError);
    CHECK_THROWS_AS(io::signature_from_json(json::parse(R"({"2": "99999999999999999999"})")), ValidationError);
    CHECK_THROWS_AS(io::signature_from_json(json::parse("{}")), ValidationError);
}

TEST_CASE("strategy expressions round-trip") {
    gen::Rng rng(12);
    for (int t = 0; t < 200; ++t) {
        int vars = 0;
        auto e = gen::expr(rng, gen::uniform(rng, 1, 30), 4, vars);
        CHECK(io::expr_from_json(io::to_json(e)) == e);
    }
    auto three = io::expr_from_json(json::parse(R"({"type": "seq", "parts": [
        {"type": "circle", "start": 1, "n": 1, "m": 1, "l": 1},
        {"type": "circle", "start": 2, "n": 1, "m": 1, "l": 1},
        {"type": "circle", "start": 3, "n": 1, "m": 1, "l": 1}]})"));
    CHECK(period_of(three) == 3);
    CHECK(three.right().kind() == StrategyExpr::Kind::Seq);
    CHECK_THROWS_AS(io::expr_from_json(json::parse(R"({"type": "circle", "start": 1, "n": 3, "m": 2, "l": 1})")),
                    ValidationError);
    CHECK_THROWS_AS(io::expr_from_json(json::parse(R"({"type": "spiral"})")), ValidationError);
}

TEST_CASE("synthesis results round-trip") {
    for (const auto& s : {Signature({{2, 3}}), Signature({{2, 2}, {3, 3}}), Signature({{3, 7}, {5, 11}}),
                          Signature({{37248973638339152ULL, 709793170386861531ULL}})}) {
        auto r = synthesize_from_signature(s);
        auto j = io::to_json(r);
        auto back = io::synthesis_from_json(j);
        CHECK(back.expr == r.expr);
        CHECK(back.value == r.value);
        CHECK(back.variables == r.variables);
        CHECK(back.bindings == r.bindings);
        REQUIRE(back.equations.size() == r.equations.size());
        for (std::size_t i = 0; i < r.equations.size(); ++i) {
            CHECK(back.equations[i].lhs == r.equations[i].lhs);
            CHECK(back.equations[i].rhs == r.equations[i].rhs);
        }
        CHECK(io::to_json(back).dump() == j.dump());
    }
}

TEST_CASE("value expressions and valuations") {
    auto e = ValueExpr::one_minus(ValueExpr::pow(
        ValueExpr::mul({ValueExpr::constant(Rational(2, 3)), ValueExpr::var("p")}), 12345678901234ULL));
    CHECK(io::value_expr_from_json(io::to_json(e)) == e);
    CHECK(io::to_json(ValueExpr::constant(Rational(1, 2)))["value"] == "1/2");

    Valuation v{{"p1", 0.61803398874989485}, {"w_3", 0.25}};
    CHECK(io::valuation_from_json(io::to_json(v)) == v);
    CHECK_THROWS_AS(io::valuation_from_json(json::parse(R"({"p": 1.5})")), ValidationError);
    CHECK(io::valuation_from_json(json::parse(R"({"p": "1/4"})")).at("p") == 0.25);
}

TEST_CASE("finite-memory strategies round-trip") {
    gen::Rng rng(13);
    for (int t = 0; t < 50; ++t) {
        auto g = gen::sparse_game(rng, gen::uniform(rng, 1, 12), 3, 0.4);
        auto f = gen::finite_memory(rng, g, gen::uniform(rng, 1, 4));
        auto back = io::finite_memory_from_json(io::to_json(f));
        CHECK(back.memory == f.memory);
        CHECK(back.init == f.init);
        CHECK(back.next == f.next);
        CHECK(back.emit == f.emit);
    }
}

TEST_CASE("hypergraphs by index or by name") {
    auto fano = io::hypergraph_from_json(io::read_json_file(data("fano.json")));
    CHECK(fano.ground == 7);
    CHECK(fano.edges.size() == 7);
    auto named = io::hypergraph_from_json(io::read_json_file(data("two_edges.json")));
    CHECK(named.ground == 4);
    CHECK(named.edges[1] == Hyperedge{1, 2, 3});
    CHECK_THROWS_AS(io::hypergraph_from_json(json::parse(R"({"ground": ["a"], "edges": [["a", "b", "c"]]})")),
                    ValidationError);
    CHECK_THROWS_AS(io::hypergraph_from_json(json::parse(R"({"ground": 3, "edges": [[0, 1]]})")), ValidationError);
}

TEST_CASE("file errors name the path") {
    CHECK_THROWS_WITH_AS(io::read_json_file("/nonexistent/x.json"), "/nonexistent/x.json: cannot open file",
                         ValidationError);
    CHECK(io::rounded(0.61803398874989485).dump() == "0.6180339887");
}
