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

#include "patrol/value_expr.hpp"

#include <sstream>

namespace patrol {

namespace {

// Largest exponent for which a constant base is folded into a rational.
constexpr std::uint64_t kFoldExponentLimit = 64;

}  // namespace

ValueExpr::ValueExpr() : ValueExpr(constant(Rational(0))) {}

ValueExpr ValueExpr::constant(const Rational& value) {
    auto n = std::make_shared<Node>();
    n->op = Op::Const;
    n->value = value;
    return ValueExpr(std::move(n));
}

ValueExpr ValueExpr::var(std::string name) {
    auto n = std::make_shared<Node>();
    n->op = Op::Var;
    n->name = std::move(name);
    return ValueExpr(std::move(n));
}

ValueExpr ValueExpr::mul(std::vector<ValueExpr> factors) {
    Rational c = 1;
    std::vector<ValueExpr> rest;
    for (auto& f : factors) {
        if (f.op() == Op::Const) {
            c *= f.constant_value();
        } else if (f.op() == Op::Mul) {
            for (const auto& g : f.args()) {
                if (g.op() == Op::Const) {
                    c *= g.constant_value();
                } else {
                    rest.push_back(g);
                }
            }
        } else {
            rest.push_back(std::move(f));
        }
    }
    if (c == 0 || rest.empty()) return constant(c);
    if (c == 1 && rest.size() == 1) return rest.front();
    auto n = std::make_shared<Node>();
    n->op = Op::Mul;
    if (c != 1) n->args.push_back(constant(c));
    for (auto& r : rest) n->args.push_back(std::move(r));
    return ValueExpr(std::move(n));
}

ValueExpr ValueExpr::pow(const ValueExpr& base, std::uint64_t exponent) {
    if (exponent == 0) throw DomainError("power exponent must be positive");
    if (exponent == 1) return base;
    if (base.is_constant() && exponent <= kFoldExponentLimit) {
        Rational r = 1;
        for (std::uint64_t i = 0; i < exponent; ++i) r *= base.constant_value();
        return constant(r);
    }
    auto n = std::make_shared<Node>();
    n->op = Op::Pow;
    n->args.push_back(base);
    n->exponent = exponent;
    return ValueExpr(std::move(n));
}

ValueExpr ValueExpr::one_minus(const ValueExpr& arg) {
    if (arg.is_constant()) return constant(1 - arg.constant_value());
    if (arg.op() == Op::OneMinus) return arg.args().front();
    auto n = std::make_shared<Node>();
    n->op = Op::OneMinus;
    n->args.push_back(arg);
    return ValueExpr(std::move(n));
}

void ValueExpr::collect_variables(std::set<std::string>& out) const {
    if (op() == Op::Var) {
        out.insert(name());
        return;
    }
    for (const auto& a : args()) a.collect_variables(out);
}

std::set<std::string> ValueExpr::variables() const {
    std::set<std::string> out;
    collect_variables(out);
    return out;
}

std::uint64_t ValueExpr::tree_size() const {
    std::uint64_t n = 1;
    for (const auto& a : args()) n += a.tree_size();
    return n;
}

std::string ValueExpr::to_string() const {
    std::ostringstream os;
    switch (op()) {
    case Op::Const:
        os << patrol::to_string(constant_value());
        break;
    case Op::Var:
        os << name();
        break;
    case Op::Mul:
        for (std::size_t i = 0; i < args().size(); ++i) {
            if (i) os << " * ";
            const auto& a = args()[i];
            bool paren = a.op() == Op::OneMinus;
            os << (paren ? "(" : "") << a.to_string() << (paren ? ")" : "");
        }
        break;
    case Op::Pow: {
        const auto& b = args().front();
        bool paren = b.op() != Op::Var && !(b.is_constant() && denominator(b.constant_value()) == 1);
        os << (paren ? "(" : "") << b.to_string() << (paren ? ")" : "") << "^" << exponent();
        break;
    }
    case Op::OneMinus: {
        const auto& a = args().front();
        bool paren = a.op() == Op::OneMinus;
        os << "1 - " << (paren ? "(" : "") << a.to_string() << (paren ? ")" : "");
        break;
    }
    }
    return os.str();
}

bool operator==(const ValueExpr& a, const ValueExpr& b) {
    if (a.node_ == b.node_) return true;
    if (a.op() != b.op()) return false;
    switch (a.op()) {
    case ValueExpr::Op::Const:
        return a.constant_value() == b.constant_value();
    case ValueExpr::Op::Var:
        return a.name() == b.name();
    case ValueExpr::Op::Pow:
        if (a.exponent() != b.exponent()) return false;
        break;
    default:
        break;
    }
    if (a.args().size() != b.args().size()) return false;
    for (std::size_t i = 0; i < a.args().size(); ++i) {
        if (!(a.args()[i] == b.args()[i])) return false;
    }
    return true;
}

}  // namespace patrol
