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

#ifndef PATROL_ENVCHECK_HPP
#define PATROL_ENVCHECK_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "patrol/game.hpp"

namespace patrol {

struct LabeledDigraph {
    std::size_t n = 0;
    std::vector<std::uint64_t> label;
    std::vector<std::string> name;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;  // sorted, unique

    void add_arc(std::uint32_t a, std::uint32_t b) { arcs.emplace_back(a, b); }
    /// Sorts and deduplicates arcs.
    void finalize();
    bool has_arc(std::uint32_t a, std::uint32_t b) const;
    std::vector<std::vector<bool>> matrix() const;
};

/// Vertices v_k[i,j] (k in supp S, 0 <= i < k, 1 <= j <= S(k)/k) with an arc
/// v_k[i,.] -> v_k'[i',.] iff i' = i + 1 (mod gcd(k, k')).
LabeledDigraph build_characteristic_digraph(const Signature& s, std::uint64_t cap = 2000);

struct EmbeddingResult {
    bool connected = false;
    /// witness[x] = game node of characteristic-digraph vertex x
    std::vector<NodeId> witness;
    LabeledDigraph pattern;
    std::uint64_t search_nodes = 0;
};

/// Label-preserving subdigraph embedding of the characteristic digraph into
/// the environment. The witness is the first one found, not a canonical one.
EmbeddingResult is_sufficiently_connected(const PatrollingGame& g, std::uint64_t node_cap = 64);

/// Pairs (u, v), u != v, that are not environment edges. Labels are attack lengths.
LabeledDigraph complement(const PatrollingGame& g);

/// colors[x] in 1..k
using Coloring = std::vector<std::uint32_t>;

/// Equal class sizes and no arc xy with color(y) = color(x) mod k + 1.
bool is_special_equitable(const LabeledDigraph& h, std::uint32_t k, const Coloring& c);

/// k = 2: weak components plus subset sum; k >= 3: backtracking.
std::optional<Coloring> special_equitable_coloring(const LabeledDigraph& h, std::uint32_t k);

/// The backtracking search for any k >= 2.
std::optional<Coloring> special_equitable_coloring_backtracking(const LabeledDigraph& h, std::uint32_t k);

using Hyperedge = std::array<std::uint32_t, 3>;

/// Reduction digraph on k * (3|F| + |X|) vertices: it has a special equitable
/// k-coloring iff the 3-uniform hypergraph (X, F) is two-colorable.
LabeledDigraph gadget_from_hypergraph(std::uint32_t ground, const std::vector<Hyperedge>& edges, std::uint32_t k);

/// Exhaustive two-colorability test (|X| <= 24).
bool hypergraph_two_colorable(std::uint32_t ground, const std::vector<Hyperedge>& edges);

std::string to_dot(const LabeledDigraph& h, const std::string& graph_name = "G");
std::string to_dot(const PatrollingGame& g, const std::string& graph_name = "E");

}  // namespace patrol

#endif  // PATROL_ENVCHECK_HPP
