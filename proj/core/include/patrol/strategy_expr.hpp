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

#ifndef PATROL_STRATEGY_EXPR_HPP
#define PATROL_STRATEGY_EXPR_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "patrol/game.hpp"

namespace patrol {

/// Nodes start, start+1, ..., start+len-1 (1-based, node index i is NodeId i-1).
struct NodeRange {
    std::uint64_t start = 1;
    std::uint64_t len = 1;

    std::uint64_t last() const { return start + len - 1; }
    friend bool operator==(const NodeRange&, const NodeRange&) = default;
};

using Valuation = std::map<std::string, double>;

/**
 * Modular strategy expression:
 *
 *   Circle(U[i,N], M, L)   walk L times around the N/M blocks of size M
 *   Seq(a, b)              play a for one period, then b for one period
 *   Mix(p, a, b)           per step, (1-p)*a + p*b
 */
class StrategyExpr {
public:
    enum class Kind { Circle, Seq, Mix };

    static StrategyExpr circle(NodeRange range, std::uint64_t m, std::uint64_t l);
    static StrategyExpr seq(const StrategyExpr& left, const StrategyExpr& right);
    static StrategyExpr mix(std::string var, const StrategyExpr& left, const StrategyExpr& right);

    Kind kind() const { return node_->kind; }
    const NodeRange& range() const { return node_->range; }
    std::uint64_t m() const { return node_->m; }
    std::uint64_t l() const { return node_->l; }
    const std::string& var() const { return node_->var; }
    const StrategyExpr& left() const { return node_->children.front(); }
    const StrategyExpr& right() const { return node_->children.back(); }

    /// Mix variables, left to right, first occurrence only.
    std::vector<std::string> variables() const;
    /// Highest 1-based node index referenced.
    std::uint64_t max_node() const;
    std::uint64_t node_count() const;

    friend bool operator==(const StrategyExpr& a, const StrategyExpr& b);

private:
    struct Node {
        Kind kind = Kind::Circle;
        NodeRange range;
        std::uint64_t m = 1;
        std::uint64_t l = 1;
        std::string var;
        std::vector<StrategyExpr> children;
    };
    explicit StrategyExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::shared_ptr<const Node> node_;
};

/// Probability `prob` on each node of `range`.
struct RangeMass {
    NodeRange range;
    double prob = 0.0;
};

/// One step distribution: disjoint ranges sorted by start, zero entries dropped.
using SparseDist = std::vector<RangeMass>;

struct ModularStrategy {
    std::uint64_t period = 1;
    std::vector<SparseDist> dists;

    /// mu_phase(index), index 1-based.
    double prob(std::uint64_t phase, std::uint64_t index) const;
    std::uint64_t max_node() const;
};

/// Explicit distribution over NodeId, sorted by node.
using Distribution = std::vector<std::pair<NodeId, double>>;

/**
 * (M, next, m0, emit) with memory {0..memory-1}.
 *
 * A play in state (m, x) picks the next node w from emit[m][x] and moves to
 * (next[m][w], w). The initial state is (init, init node of the game).
 */
struct FiniteMemoryStrategy {
    std::uint64_t memory = 1;
    std::uint64_t init = 0;
    std::vector<std::vector<std::uint64_t>> next;  // [m][w]
    std::vector<std::vector<Distribution>> emit;   // [m][u]
};

std::uint64_t period_of(const StrategyExpr& e);

/// Structural checks: M divides N, positive lengths, 1-based ranges.
void validate_expr(const StrategyExpr& e);

ModularStrategy expand_explicit(const StrategyExpr& e, const Valuation& v, std::uint64_t cap = 1'000'000);

/**
 * Memory {0..c-1} counting history length mod c. The initial element is
 * 1 mod c: the history consisting of the initial node alone has length 1.
 */
FiniteMemoryStrategy to_finite_memory(const ModularStrategy& m, const PatrollingGame& g);

/// Right fold into nested Mix nodes named stem, stem.2, stem.3, ...
StrategyExpr compose(const std::string& stem, const std::vector<StrategyExpr>& parts);

/// Throws ValidationError unless f is well-shaped and every emission at a
/// reachable state stays on environment edges.
void validate_finite_memory(const FiniteMemoryStrategy& f, const PatrollingGame& g);

}  // namespace patrol

#endif  // PATROL_STRATEGY_EXPR_HPP
