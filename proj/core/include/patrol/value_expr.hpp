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

#ifndef PATROL_VALUE_EXPR_HPP
#define PATROL_VALUE_EXPR_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "patrol/numeric.hpp"

namespace patrol {

/**
 * Immutable arithmetic expression over [0,1]-valued variables.
 *
 * The node set is deliberately small: rational constants, variables,
 * n-ary products, powers with a positive 64-bit exponent, and 1 - x.
 * Coverage formulas such as e*(D/N), 1-(1-e)^k and 1-(1-V1)(1-V2) are
 * built from these. Subtrees are shared, so copies are cheap.
 *
 * The factories apply a few local simplifications (constant folding,
 * flattening of nested products, 1-(1-x) = x) which keep the output of
 * synthesis small and deterministic.
 */
class ValueExpr {
public:
    enum class Op { Const, Var, Mul, Pow, OneMinus };

    ValueExpr();  // the constant 0

    static ValueExpr constant(const Rational& value);
    static ValueExpr var(std::string name);
    static ValueExpr mul(std::vector<ValueExpr> factors);
    static ValueExpr pow(const ValueExpr& base, std::uint64_t exponent);
    static ValueExpr one_minus(const ValueExpr& arg);

    Op op() const { return node_->op; }
    bool is_constant() const { return op() == Op::Const; }
    const Rational& constant_value() const { return node_->value; }
    const std::string& name() const { return node_->name; }
    const std::vector<ValueExpr>& args() const { return node_->args; }
    std::uint64_t exponent() const { return node_->exponent; }

    void collect_variables(std::set<std::string>& out) const;
    std::set<std::string> variables() const;

    /// Number of nodes when written out as a tree.
    std::uint64_t tree_size() const;

    /// Infix rendering, e.g. "1 - (1 - p1)^2".
    std::string to_string() const;

    friend bool operator==(const ValueExpr& a, const ValueExpr& b);
    friend ValueExpr operator*(const ValueExpr& a, const ValueExpr& b) { return mul({a, b}); }

private:
    struct Node {
        Op op = Op::Const;
        Rational value;
        std::string name;
        std::vector<ValueExpr> args;
        std::uint64_t exponent = 0;
    };
    explicit ValueExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::shared_ptr<const Node> node_;
};

}  // namespace patrol

#endif  // PATROL_VALUE_EXPR_HPP
