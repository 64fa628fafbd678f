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

#ifndef PATROL_GAME_HPP
#define PATROL_GAME_HPP

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "patrol/numeric.hpp"

namespace patrol {

/// Dense node index in [0, nodes).
using NodeId = std::uint32_t;

/**
 * A patrolling problem: the defender starts at `init` and walks the
 * environment one edge per time unit; an intrusion at target u takes
 * attack_len[u] time units to complete.
 *
 * When `fully_connected` is set the environment is U x U and `edges`
 * stays empty, so signature-sized games never allocate |U|^2 edges.
 */
struct PatrollingGame {
    std::size_t nodes = 0;
    std::vector<NodeId> targets;
    NodeId init = 0;
    bool fully_connected = false;
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::map<NodeId, std::uint64_t> attack_len;

    bool is_target(NodeId u) const { return attack_len.count(u) != 0; }
    std::uint64_t attack_length(NodeId u) const;
    std::uint64_t max_attack_len() const;

    /// Row-major |U| x |U| adjacency; meant for the small explicit games.
    std::vector<std::vector<bool>> adjacency() const;
    std::vector<NodeId> successors(NodeId u) const;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks every PatrollingGame invariant; violations are reported, not thrown.
ValidationReport validate_game(const PatrollingGame& g);

/// Throws ValidationError carrying the first violation.
void require_valid(const PatrollingGame& g);

/**
 * Attack signature: attack length k -> number of targets with that length.
 * Counts are 64-bit and never expanded into node lists.
 */
class Signature {
public:
    Signature() = default;
    Signature(std::initializer_list<std::pair<std::uint64_t, std::uint64_t>> counts);

    /// Adds n targets of attack length k (n may be zero, which is a no-op).
    void add(std::uint64_t k, std::uint64_t n);

    const std::map<std::uint64_t, std::uint64_t>& counts() const { return counts_; }
    std::uint64_t count(std::uint64_t k) const;
    bool empty() const { return counts_.empty(); }

    /// Sum of all counts; throws OverflowError past 2^64-1.
    std::uint64_t total() const;
    /// k divides S(k) for every k in the support.
    bool is_well_formed() const;

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::map<std::uint64_t, std::uint64_t> counts_;
};

Signature signature_of(const PatrollingGame& g);

/// (sum_k S(k)/k)^-1, exact. Callers min with 1 where a probability is needed.
Rational upper_bound_value(const Signature& s);

/// The fully connected game with T = U for a signature: classes occupy
/// consecutive node blocks in increasing attack length, init is node 0.
PatrollingGame fully_connected_game(const Signature& s, std::uint64_t node_cap = 1'000'000);

}  // namespace patrol

#endif  // PATROL_GAME_HPP
