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

#include <random>
#include <set>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "patrol/envcheck.hpp"

using namespace patrol;

namespace {

struct Vertex {
    std::uint64_t k, i;
};

// v<k>[<i>,<j>]
Vertex parse_name(const std::string& name) {
    auto open = name.find('[');
    auto comma = name.find(',');
    return {std::stoull(name.substr(1, open - 1)), std::stoull(name.substr(open + 1, comma - open - 1))};
}

bool witness_ok(const EmbeddingResult& r, const PatrollingGame& g) {
    const auto adj = g.adjacency();
    std::set<NodeId> used(r.witness.begin(), r.witness.end());
    if (used.size() != r.witness.size()) return false;
    for (std::size_t x = 0; x < r.witness.size(); ++x) {
        if (g.attack_length(r.witness[x]) != r.pattern.label[x]) return false;
    }
    for (const auto& [a, b] : r.pattern.arcs) {
        if (!adj[r.witness[a]][r.witness[b]]) return false;
    }
    return true;
}

LabeledDigraph random_digraph(gen::Rng& rng, std::size_t n, double density) {
    LabeledDigraph h;
    h.n = n;
    h.label.assign(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        h.name.push_back("x" + std::to_string(i));
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && gen::unit(rng) < density) h.add_arc(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
        }
    }
    h.finalize();
    return h;
}

PatrollingGame with_edges(std::size_t n, std::uint64_t d, std::vector<std::pair<NodeId, NodeId>> edges) {
    PatrollingGame g = oracle::uniform_game(n, d);
    g.fully_connected = false;
    g.edges = std::move(edges);
    return g;
}

}  // namespace

TEST_CASE("characteristic digraph examples") {
    auto two = build_characteristic_digraph(Signature({{2, 2}}));
    CHECK(two.n == 2);
    CHECK(two.arcs == std::vector<std::pair<std::uint32_t, std::uint32_t>>{{0, 1}, {1, 0}});

    auto one = build_characteristic_digraph(Signature({{1, 1}}));
    CHECK(one.n == 1);
    CHECK(one.has_arc(0, 0));

    auto mixed = build_characteristic_digraph(Signature({{2, 2}, {3, 3}}));
    CHECK(mixed.n == 5);
    CHECK(mixed.name[2] == "v3[0,1]");

    CHECK_THROWS_AS(build_characteristic_digraph(Signature({{2, 3}})), DomainError);
    CHECK_THROWS_AS(build_characteristic_digraph(Signature({{2, 4000}})), SizeLimitError);
}

TEST_CASE("characteristic digraph arcs follow the witness rule") {
    gen::Rng rng(8);
    for (int t = 0; t < 60; ++t) {
        auto s = gen::well_formed(rng, 3, 6, 24);
        auto h = build_characteristic_digraph(s);
        CHECK(h.n == s.total());
        for (std::uint32_t a = 0; a < h.n; ++a) {
            for (std::uint32_t b = 0; b < h.n; ++b) {
                auto va = parse_name(h.name[a]);
                auto vb = parse_name(h.name[b]);
                CHECK(h.has_arc(a, b) == oracle::characteristic_arc(va.k, va.i, vb.k, vb.i));
                CHECK(h.label[a] == va.k);
            }
        }
    }
}

TEST_CASE("sufficient connectivity examples") {
    auto mixed = fully_connected_game(Signature({{2, 2}, {3, 3}}));
    auto r = is_sufficiently_connected(mixed);
    CHECK(r.connected);
    CHECK(witness_ok(r, mixed));

    auto loops = with_edges(2, 2, {{0, 0}, {1, 1}});
    CHECK_FALSE(is_sufficiently_connected(loops).connected);

    auto cycle = with_edges(2, 2, {{0, 1}, {1, 0}});
    CHECK(is_sufficiently_connected(cycle).connected);

    CHECK_THROWS_AS(is_sufficiently_connected(oracle::uniform_game(3, 2)), DomainError);
    CHECK_THROWS_AS(is_sufficiently_connected(fully_connected_game(Signature({{1, 65}}))), SizeLimitError);
}

TEST_CASE("embedding search agrees with exhaustive search") {
    gen::Rng rng(21);
    int positives = 0;
    for (int t = 0; t < 150; ++t) {
        auto s = gen::well_formed(rng, 2, 3, 7);
        auto g = fully_connected_game(s);
        g.fully_connected = false;
        for (NodeId u = 0; u < g.nodes; ++u) {
            bool any = false;
            for (NodeId w = 0; w < g.nodes; ++w) {
                if (gen::unit(rng) < 0.6) {
                    g.edges.emplace_back(u, w);
                    any = true;
                }
            }
            if (!any) g.edges.emplace_back(u, u);
        }
        auto r = is_sufficiently_connected(g);
        CHECK(r.connected == oracle::embeds(build_characteristic_digraph(s), g));
        if (r.connected) {
            ++positives;
            CHECK(witness_ok(r, g));
        }
    }
    CHECK(positives > 10);
}

TEST_CASE("complement drops loops and edges") {
    auto g = with_edges(3, 3, {{0, 0}, {0, 1}, {1, 2}, {2, 0}});
    auto h = complement(g);
    CHECK(h.n == 3);
    CHECK(h.arcs == std::vector<std::pair<std::uint32_t, std::uint32_t>>{{0, 2}, {1, 0}, {2, 1}});
    CHECK(complement(oracle::uniform_game(4, 2)).arcs.empty());
}

TEST_CASE("special equitable coloring examples") {
    LabeledDigraph empty;
    empty.n = 6;
    empty.label.assign(6, 1);
    for (int i = 0; i < 6; ++i) empty.name.push_back(std::to_string(i));
    for (std::uint32_t k : {2u, 3u, 6u}) {
        auto c = special_equitable_coloring(empty, k);
        REQUIRE(c);
        CHECK(is_special_equitable(empty, k, *c));
    }
    CHECK_THROWS_AS(special_equitable_coloring(empty, 4), DomainError);

    // One weak component of four vertices cannot be split in two.
    LabeledDigraph path = empty;
    path.n = 4;
    path.label.resize(4);
    path.name.resize(4);
    path.add_arc(0, 1);
    path.add_arc(2, 1);
    path.add_arc(2, 3);
    path.finalize();
    CHECK_FALSE(special_equitable_coloring(path, 2));

    // Components of sizes 2, 2, 4: the two small ones share a color.
    LabeledDigraph parts;
    parts.n = 8;
    parts.label.assign(8, 1);
    for (int i = 0; i < 8; ++i) parts.name.push_back(std::to_string(i));
    parts.add_arc(0, 1);
    parts.add_arc(2, 3);
    parts.add_arc(4, 5);
    parts.add_arc(5, 6);
    parts.add_arc(6, 7);
    parts.finalize();
    auto c = special_equitable_coloring(parts, 2);
    REQUIRE(c);
    CHECK(is_special_equitable(parts, 2, *c));
    CHECK((*c)[0] == (*c)[2]);
    CHECK((*c)[0] != (*c)[4]);
}

TEST_CASE("k = 2 dynamic program agrees with backtracking and brute force") {
    gen::Rng rng(33);
    for (int t = 0; t < 300; ++t) {
        std::size_t n = 2 * gen::uniform(rng, 1, 5);
        auto h = random_digraph(rng, n, gen::unit(rng) * 0.4);
        auto fast = special_equitable_coloring(h, 2);
        auto slow = special_equitable_coloring_backtracking(h, 2);
        CHECK(fast.has_value() == slow.has_value());
        CHECK(fast.has_value() == oracle::special_colorable(h, 2));
        if (fast) CHECK(is_special_equitable(h, 2, *fast));
    }
}

TEST_CASE("k >= 3 backtracking agrees with brute force") {
    gen::Rng rng(34);
    for (int t = 0; t < 150; ++t) {
        std::uint32_t k = static_cast<std::uint32_t>(gen::uniform(rng, 3, 4));
        std::size_t n = k * gen::uniform(rng, 1, 2);
        auto h = random_digraph(rng, n, gen::unit(rng) * 0.6);
        auto c = special_equitable_coloring(h, k);
        CHECK(c.has_value() == oracle::special_colorable(h, k));
        if (c) CHECK(is_special_equitable(h, k, *c));
    }
}

TEST_CASE("gadget sizes") {
    auto h = gadget_from_hypergraph(3, {{0, 1, 2}}, 3);
    CHECK(h.n == 18);
    for (const auto& [a, b] : h.arcs) CHECK(a != b);
    CHECK(gadget_from_hypergraph(4, {{0, 1, 2}, {1, 2, 3}}, 4).n == 4 * 10);
    CHECK(gadget_from_hypergraph(3, {}, 5).n == 15);
    CHECK_THROWS_AS(gadget_from_hypergraph(3, {{0, 1, 1}}, 3), DomainError);
    CHECK_THROWS_AS(gadget_from_hypergraph(3, {{0, 1, 5}}, 3), DomainError);
    CHECK_THROWS_AS(gadget_from_hypergraph(3, {{0, 1, 2}}, 2), DomainError);
}

TEST_CASE("gadget colorability follows the hypergraph") {
    auto empty = gadget_from_hypergraph(3, {}, 3);
    CHECK(special_equitable_coloring(empty, 3).has_value());

    const std::vector<Hyperedge> fano = {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
    CHECK_FALSE(hypergraph_two_colorable(7, fano));
    CHECK_FALSE(oracle::two_colorable(7, fano));
    for (std::uint32_t k : {3u, 4u, 5u}) CHECK_FALSE(special_equitable_coloring(gadget_from_hypergraph(7, fano, k), k));

    gen::Rng rng(55);
    for (int t = 0; t < 30; ++t) {
        std::uint32_t ground = static_cast<std::uint32_t>(gen::uniform(rng, 3, 6));
        std::vector<Hyperedge> edges;
        for (std::uint64_t e = gen::uniform(rng, 0, 3); e > 0; --e) {
            std::vector<std::uint32_t> pool(ground);
            std::iota(pool.begin(), pool.end(), 0u);
            std::shuffle(pool.begin(), pool.end(), rng);
            edges.push_back({pool[0], pool[1], pool[2]});
        }
        std::uint32_t k = static_cast<std::uint32_t>(gen::uniform(rng, 3, 5));
        auto h = gadget_from_hypergraph(ground, edges, k);
        bool two = oracle::two_colorable(ground, edges);
        CHECK(hypergraph_two_colorable(ground, edges) == two);
        CHECK(special_equitable_coloring(h, k).has_value() == two);
    }
}

TEST_CASE("DOT export") {
    auto dot = to_dot(build_characteristic_digraph(Signature({{2, 2}})), "M");
    CHECK(dot.rfind("digraph M {", 0) == 0);
    CHECK(dot.find("\"v2[0,1]\" -> \"v2[1,1]\";") != std::string::npos);
    auto game = to_dot(oracle::uniform_game(2, 1), "E");
    CHECK(game.find("digraph E {") == 0);
}
