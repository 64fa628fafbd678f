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

#ifndef PATROL_DEFEND_HPP
#define PATROL_DEFEND_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "patrol/game.hpp"
#include "patrol/strategy_expr.hpp"
#include "patrol/value_expr.hpp"

namespace patrol {

/// lhs = rhs
struct Equation {
    ValueExpr lhs;
    ValueExpr rhs;
};

/// Fresh variables and equations collected during one synthesis call.
class EquationLedger {
public:
    /// p1, p2, ... in request order; guess seeds the solver.
    std::string fresh(double guess = 0.5);
    void add_variable(std::string name) { variables_.push_back(std::move(name)); }
    void add_equation(ValueExpr lhs, ValueExpr rhs) { equations_.push_back({std::move(lhs), std::move(rhs)}); }

    const std::vector<std::string>& variables() const { return variables_; }
    const std::vector<Equation>& equations() const { return equations_; }
    std::uint64_t fresh_count() const { return counter_; }
    void set_guess(const std::string& name, double v) { guesses_[name] = v; }
    const Valuation& guesses() const { return guesses_; }

private:
    std::uint64_t counter_ = 0;
    std::vector<std::string> variables_;
    std::vector<Equation> equations_;
    Valuation guesses_;
};

struct SynthesisResult {
    StrategyExpr expr = StrategyExpr::circle({1, 1}, 1, 1);
    ValueExpr value;
    std::vector<std::string> variables;
    std::vector<Equation> equations;
    /// Mix variables fixed in closed form (well-formed signatures only).
    std::map<std::string, Rational> bindings;
    /// Starting point for the solver: each split variable at its share of the nodes.
    Valuation guess;
};

/**
 * Strategy and guaranteed coverage for the nodes of `range`, all with attack
 * length d, when the strategy as a whole spends probability `weight` there.
 */
std::pair<StrategyExpr, ValueExpr> defend(NodeRange range, std::uint64_t d, const ValueExpr& weight,
                                          EquationLedger& ledger);

/**
 * Defends every attack-length class of s on its own block of nodes and mixes
 * the class strategies. Class i (in increasing k) receives probability
 * v_1 ... v_{i-1} (1 - v_i), where v_i is the Mix variable w_<k_{i+1}>.
 */
SynthesisResult synthesize_from_signature(const Signature& s);

/// Number of fresh variables defend(U[1,n], d, 1) creates.
std::uint64_t euclid_variable_count(std::uint64_t n, std::uint64_t d);

/// Solved values plus the closed-form bindings of r, as one valuation.
Valuation full_valuation(const SynthesisResult& r, const Valuation& solved = {});

}  // namespace patrol

#endif  // PATROL_DEFEND_HPP
