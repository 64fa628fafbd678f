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

#ifndef PATROL_EVALUATOR_HPP
#define PATROL_EVALUATOR_HPP

#include <cstdint>

#include "patrol/game.hpp"
#include "patrol/strategy_expr.hpp"

namespace patrol {

/// Value against the best-responding attacker and where that attacker strikes.
struct ModularValue {
    double value = 1.0;
    std::uint64_t phase = 0;
    NodeId target = 0;
};

struct ReachState {
    std::uint64_t mem = 0;
    NodeId node = 0;
    friend bool operator==(const ReachState&, const ReachState&) = default;
};

struct FiniteMemoryValue {
    double value = 1.0;
    ReachState state;
    NodeId target = 0;
    std::size_t reachable_states = 0;
};

/// 1 - prod_{j < d(u)} (1 - mu_{(phase + j) mod c}(u))
double attval_modular(const ModularStrategy& m, const PatrollingGame& g, std::uint64_t phase, NodeId u);

/**
 * Minimum of attval_modular over all phases and targets. Nodes that no
 * distribution tells apart are grouped, so the cost follows the number of
 * (phase, range) entries rather than period x nodes.
 */
ModularValue value_modular(const ModularStrategy& m, const PatrollingGame& g);

/// States reachable from (init, initial node), in BFS order.
std::vector<ReachState> reachable_states(const FiniteMemoryStrategy& f, const PatrollingGame& g);

FiniteMemoryValue value_finite_memory(const FiniteMemoryStrategy& f, const PatrollingGame& g);

/// Independent check of value_finite_memory by explicit path enumeration.
/// Requires |U| <= 8 and max attack length <= 5.
FiniteMemoryValue oracle_value_by_path_enumeration(const FiniteMemoryStrategy& f, const PatrollingGame& g);

}  // namespace patrol

#endif  // PATROL_EVALUATOR_HPP
