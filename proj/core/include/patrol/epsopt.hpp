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

#ifndef PATROL_EPSOPT_HPP
#define PATROL_EPSOPT_HPP

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "patrol/game.hpp"
#include "patrol/strategy_expr.hpp"

namespace patrol {

/// Grid unit 1/denominator with denominator = ceil(|U| * dhat / eps).
struct GridSpec {
    std::uint64_t denominator = 1;
    Rational unit() const { return Rational(1, denominator); }
};

GridSpec grid_for(const PatrollingGame& g, const Rational& eps);

/**
 * A local dhat-step plan (r, s, c): the defender stands at `root`, moves by
 * `step`, and visits target u within k steps with probability c(k, u).
 * levels[k-2] holds c(k, .) on targets for k = 2..dhat.
 */
struct Characteristic {
    NodeId root = 0;
    std::map<NodeId, Rational> step;
    std::vector<std::map<NodeId, Rational>> levels;

    /// c(k, u) with c(0, u) = [u = root] and c(1, u) = step(u).
    Rational c(std::uint64_t k, NodeId u) const;
    friend bool operator==(const Characteristic&, const Characteristic&) = default;
};

using RationalDist = std::vector<std::pair<NodeId, Rational>>;

/// Carry rounding onto multiples of 1/denominator in the given entry order.
RationalDist round_distribution(const RationalDist& dist, std::uint64_t denominator);
/// Same, after normalizing the doubles exactly so that they sum to 1.
RationalDist round_distribution(const Distribution& dist, std::uint64_t denominator);

/// min over targets u of c(d(u), u)
Rational char_value(const Characteristic& c, const PatrollingGame& g);

/// Exact check of c(k,u) = c(1,u) + sum_{v != u} c(1,v) succ[v](k-1,u) for k = 2..dhat.
bool is_successor(const Characteristic& c, const std::map<NodeId, Characteristic>& succ, const PatrollingGame& g);

/// Largest subset in which every member has a successor assignment; empty
/// unless it contains a characteristic rooted at the initial node.
std::vector<Characteristic> greatest_closed_subset(const std::vector<Characteristic>& pool, const PatrollingGame& g);

struct EpsLimits {
    std::uint64_t max_nodes = 4;
    std::uint64_t max_attack_len = 2;
    std::uint64_t max_grid = 24;
    std::uint64_t max_chars = 2'000'000;
};

struct EpsResult {
    FiniteMemoryStrategy strategy;
    std::vector<Characteristic> closed_set;
    Rational value;
    std::uint64_t grid = 1;
    std::uint64_t chars_enumerated = 0;
};

/**
 * Best closed set of grid characteristics, and the strategy it induces
 * (memory = closed set, init = its member rooted at the initial node).
 * Plans are searched by descending threshold on the value, so the result
 * maximizes min val(c) over closed sets of the grid.
 */
EpsResult synthesize_eps_optimal(const PatrollingGame& g, const Rational& eps, const EpsLimits& limits = {});

}  // namespace patrol

#endif  // PATROL_EPSOPT_HPP
