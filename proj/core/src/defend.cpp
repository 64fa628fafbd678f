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

#include "patrol/defend.hpp"

namespace patrol {

std::string EquationLedger::fresh(double guess) {
    std::string name = "p" + std::to_string(++counter_);
    variables_.push_back(name);
    guesses_[name] = guess;
    return name;
}

std::pair<StrategyExpr, ValueExpr> defend(NodeRange range, std::uint64_t d, const ValueExpr& weight,
                                          EquationLedger& ledger) {
    if (range.len == 0 || d == 0) throw DomainError("defend needs a non-empty range and a positive attack length");
    const std::uint64_t n = range.len;

    if (n % d == 0) {
        auto ratio = ValueExpr::constant(Rational(BigInt(d), BigInt(n)));
        return {StrategyExpr::circle(range, n / d, 1), ValueExpr::mul({weight, ratio})};
    }
    if (d % n == 0) {
        std::uint64_t k = d / n;
        auto v = ValueExpr::one_minus(ValueExpr::pow(ValueExpr::one_minus(weight), k));
        return {StrategyExpr::circle(range, 1, k), v};
    }
    if (n > d) {
        std::uint64_t k = n / d;
        std::uint64_t c = n % d;
        std::string p = ledger.fresh(static_cast<double>(c) / static_cast<double>(n));
        auto pv = ValueExpr::var(p);
        NodeRange head{range.start, k * d};
        NodeRange tail{range.start + k * d, c};
        auto [t1, v1] = defend(head, d, ValueExpr::mul({ValueExpr::one_minus(pv), weight}), ledger);
        auto [t2, v2] = defend(tail, d, ValueExpr::mul({pv, weight}), ledger);
        ledger.add_equation(v1, v2);
        return {StrategyExpr::mix(p, t1, t2), v1};
    }
    std::uint64_t k = d / n;
    std::uint64_t c = d % n;
    auto [t1, v1] = defend(range, k * n, weight, ledger);
    auto [t2, v2] = defend(range, c, weight, ledger);
    auto v = ValueExpr::one_minus(ValueExpr::mul({ValueExpr::one_minus(v1), ValueExpr::one_minus(v2)}));
    return {StrategyExpr::seq(t1, t2), v};
}

SynthesisResult synthesize_from_signature(const Signature& s) {
    if (s.empty()) throw DomainError("cannot synthesize for an empty signature");
    s.total();  // block layout must fit in 64 bits

    std::vector<std::uint64_t> ks;
    for (const auto& [k, n] : s.counts()) ks.push_back(k);
    const std::size_t m = ks.size();

    std::vector<NodeRange> blocks;
    std::uint64_t start = 1;
    for (std::uint64_t k : ks) {
        std::uint64_t n = s.count(k);
        blocks.push_back({start, n});
        start = checked_add(start, n, "node index");
    }

    SynthesisResult r;
    EquationLedger ledger;
    std::vector<std::string> mixvars;
    for (std::size_t i = 0; i + 1 < m; ++i) mixvars.push_back("w_" + std::to_string(ks[i + 1]));

    std::vector<StrategyExpr> thetas;
    std::vector<ValueExpr> values;

    if (s.is_well_formed()) {
        std::vector<Rational> w;
        Rational total = 0;
        for (std::uint64_t k : ks) {
            w.emplace_back(BigInt(s.count(k)), BigInt(k));
            total += w.back();
        }
        for (auto& x : w) x /= total;
        Rational tail = 1;  // sum of w_j for j >= i
        for (std::size_t i = 0; i < m; ++i) {
            auto [t, v] = defend(blocks[i], ks[i], ValueExpr::constant(w[i]), ledger);
            thetas.push_back(t);
            values.push_back(v);
            if (i + 1 < m) r.bindings[mixvars[i]] = (tail - w[i]) / tail;
            tail -= w[i];
        }
        r.value = values.front();
    } else {
        ValueExpr prefix = ValueExpr::constant(1);
        for (std::size_t i = 0; i < m; ++i) {
            ValueExpr weight = prefix;
            if (i + 1 < m) {
                auto v = ValueExpr::var(mixvars[i]);
                weight = ValueExpr::mul({prefix, ValueExpr::one_minus(v)});
                prefix = ValueExpr::mul({prefix, v});
            }
            auto [t, v] = defend(blocks[i], ks[i], weight, ledger);
            thetas.push_back(t);
            values.push_back(v);
        }
        double total = 0.0;
        for (std::uint64_t k : ks) total += static_cast<double>(s.count(k)) / static_cast<double>(k);
        double tail = total;
        for (std::size_t i = 0; i + 1 < m; ++i) {
            double w = static_cast<double>(s.count(ks[i])) / static_cast<double>(ks[i]);
            ledger.add_variable(mixvars[i]);
            ledger.set_guess(mixvars[i], (tail - w) / tail);
            tail -= w;
        }
        for (std::size_t i = 0; i + 1 < m; ++i) ledger.add_equation(values[i], values[i + 1]);
        r.value = values.front();
    }

    StrategyExpr acc = thetas.back();
    for (std::size_t i = m - 1; i-- > 0;) acc = StrategyExpr::mix(mixvars[i], thetas[i], acc);
    r.expr = acc;
    r.variables = ledger.variables();
    r.equations = ledger.equations();
    for (const auto& name : r.variables) r.guess[name] = ledger.guesses().at(name);
    return r;
}

std::uint64_t euclid_variable_count(std::uint64_t n, std::uint64_t d) {
    if (n == 0 || d == 0) throw DomainError("euclid_variable_count needs positive arguments");
    if (n < d) {
        d %= n;
        if (d == 0) return 0;
    }
    std::uint64_t j = 0;
    while (d != 0 && n % d != 0) {
        n %= d;
        d %= n;
        ++j;
    }
    return j;
}

Valuation full_valuation(const SynthesisResult& r, const Valuation& solved) {
    Valuation v = solved;
    for (const auto& [name, q] : r.bindings) v[name] = to_double(q);
    return v;
}

}  // namespace patrol
