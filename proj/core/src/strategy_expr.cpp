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

#include "patrol/strategy_expr.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace patrol {

StrategyExpr StrategyExpr::circle(NodeRange range, std::uint64_t m, std::uint64_t l) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Circle;
    n->range = range;
    n->m = m;
    n->l = l;
    return StrategyExpr(std::move(n));
}

StrategyExpr StrategyExpr::seq(const StrategyExpr& left, const StrategyExpr& right) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Seq;
    n->children = {left, right};
    return StrategyExpr(std::move(n));
}

StrategyExpr StrategyExpr::mix(std::string var, const StrategyExpr& left, const StrategyExpr& right) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Mix;
    n->var = std::move(var);
    n->children = {left, right};
    return StrategyExpr(std::move(n));
}

std::vector<std::string> StrategyExpr::variables() const {
    std::vector<std::string> out;
    std::set<std::string> seen;
    std::vector<const StrategyExpr*> stack{this};
    while (!stack.empty()) {
        const StrategyExpr* e = stack.back();
        stack.pop_back();
        if (e->kind() == Kind::Circle) continue;
        if (e->kind() == Kind::Mix && seen.insert(e->var()).second) out.push_back(e->var());
        stack.push_back(&e->right());
        stack.push_back(&e->left());
    }
    return out;
}

std::uint64_t StrategyExpr::max_node() const {
    if (kind() == Kind::Circle) return range().last();
    return std::max(left().max_node(), right().max_node());
}

std::uint64_t StrategyExpr::node_count() const {
    if (kind() == Kind::Circle) return 1;
    return 1 + left().node_count() + right().node_count();
}

bool operator==(const StrategyExpr& a, const StrategyExpr& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case StrategyExpr::Kind::Circle:
        return a.range() == b.range() && a.m() == b.m() && a.l() == b.l();
    case StrategyExpr::Kind::Mix:
        if (a.var() != b.var()) return false;
        [[fallthrough]];
    case StrategyExpr::Kind::Seq:
        return a.left() == b.left() && a.right() == b.right();
    }
    return false;
}

double ModularStrategy::prob(std::uint64_t phase, std::uint64_t index) const {
    const SparseDist& d = dists.at(phase);
    auto it = std::upper_bound(d.begin(), d.end(), index,
                               [](std::uint64_t i, const RangeMass& r) { return i < r.range.start; });
    if (it == d.begin()) return 0.0;
    --it;
    return index <= it->range.last() ? it->prob : 0.0;
}

std::uint64_t ModularStrategy::max_node() const {
    std::uint64_t m = 0;
    for (const auto& d : dists) {
        for (const auto& r : d) m = std::max(m, r.range.last());
    }
    return m;
}

std::uint64_t period_of(const StrategyExpr& e) {
    switch (e.kind()) {
    case StrategyExpr::Kind::Circle:
        return checked_mul(e.l(), e.range().len / e.m(), "circle period");
    case StrategyExpr::Kind::Seq:
        return checked_add(period_of(e.left()), period_of(e.right()), "sequence period");
    case StrategyExpr::Kind::Mix:
        return checked_lcm(period_of(e.left()), period_of(e.right()), "mix period");
    }
    return 1;
}

void validate_expr(const StrategyExpr& e) {
    if (e.kind() != StrategyExpr::Kind::Circle) {
        if (e.kind() == StrategyExpr::Kind::Mix && e.var().empty()) throw ValidationError("mix without variable");
        validate_expr(e.left());
        validate_expr(e.right());
        return;
    }
    const NodeRange& r = e.range();
    if (r.start < 1) throw ValidationError("circle range must start at index 1 or later");
    if (r.len < 1 || e.m() < 1 || e.l() < 1) throw ValidationError("circle parameters must be positive");
    if (r.len % e.m() != 0) {
        throw ValidationError("circle block size " + std::to_string(e.m()) + " does not divide " +
                              std::to_string(r.len));
    }
    std::uint64_t last;
    if (__builtin_add_overflow(r.start, r.len - 1, &last)) throw OverflowError("circle range overflows 64 bits");
}

namespace {

// Sums overlapping entries into disjoint ranges, dropping zeros.
SparseDist normalize(SparseDist in) {
    std::sort(in.begin(), in.end(), [](const RangeMass& a, const RangeMass& b) {
        return a.range.start < b.range.start;
    });
    bool disjoint = true;
    for (std::size_t i = 1; i < in.size(); ++i) {
        if (in[i].range.start <= in[i - 1].range.last()) disjoint = false;
    }
    SparseDist out;
    if (disjoint) {
        for (auto& r : in) {
            if (r.prob > 0.0) out.push_back(r);
        }
        return out;
    }
    std::map<std::uint64_t, double> delta;
    for (const auto& r : in) {
        delta[r.range.start] += r.prob;
        delta[r.range.last() + 1] -= r.prob;
    }
    double acc = 0.0;
    for (auto it = delta.begin(); it != delta.end(); ++it) {
        acc += it->second;
        auto nx = std::next(it);
        if (nx == delta.end()) break;
        if (acc > 1e-300) out.push_back({{it->first, nx->first - it->first}, acc});
    }
    return out;
}

void expand_into(const StrategyExpr& e, const Valuation& v, std::vector<SparseDist>& out) {
    switch (e.kind()) {
    case StrategyExpr::Kind::Circle: {
        std::uint64_t blocks = e.range().len / e.m();
        std::uint64_t period = e.l() * blocks;
        double p = 1.0 / static_cast<double>(e.m());
        for (std::uint64_t t = 0; t < period; ++t) {
            std::uint64_t b = t % blocks;
            out.push_back({{{e.range().start + b * e.m(), e.m()}, p}});
        }
        return;
    }
    case StrategyExpr::Kind::Seq:
        expand_into(e.left(), v, out);
        expand_into(e.right(), v, out);
        return;
    case StrategyExpr::Kind::Mix: {
        auto it = v.find(e.var());
        if (it == v.end()) throw UnboundVariableError(e.var());
        double a = it->second;
        if (!(a >= 0.0 && a <= 1.0)) throw DomainError("variable '" + e.var() + "' outside [0,1]");
        std::vector<SparseDist> l, r;
        expand_into(e.left(), v, l);
        expand_into(e.right(), v, r);
        std::uint64_t c = checked_lcm(l.size(), r.size(), "mix period");
        for (std::uint64_t t = 0; t < c; ++t) {
            SparseDist d;
            for (const auto& x : l[t % l.size()]) d.push_back({x.range, (1.0 - a) * x.prob});
            for (const auto& x : r[t % r.size()]) d.push_back({x.range, a * x.prob});
            out.push_back(normalize(std::move(d)));
        }
        return;
    }
    }
}

}  // namespace

ModularStrategy expand_explicit(const StrategyExpr& e, const Valuation& v, std::uint64_t cap) {
    validate_expr(e);
    std::uint64_t period = period_of(e);
    if (period > cap) throw SizeLimitError("strategy period exceeds expansion cap", period, cap);
    std::uint64_t nodes = e.max_node();
    if (nodes > cap) throw SizeLimitError("strategy node index exceeds expansion cap", nodes, cap);
    ModularStrategy m;
    m.period = period;
    m.dists.reserve(period);
    expand_into(e, v, m.dists);
    return m;
}

FiniteMemoryStrategy to_finite_memory(const ModularStrategy& m, const PatrollingGame& g) {
    require_valid(g);
    if (m.dists.size() != m.period || m.period == 0) throw ValidationError("modular strategy has inconsistent period");
    if (m.max_node() > g.nodes) throw ValidationError("modular strategy refers to nodes outside the game");
    const std::uint64_t c = m.period;
    const std::size_t n = g.nodes;
    const std::uint64_t table_cap = 10'000'000;
    if (c > table_cap / std::max<std::size_t>(n, 1)) {
        throw SizeLimitError("finite-memory table too large", c * n, table_cap);
    }

    std::vector<Distribution> mu(c);
    for (std::uint64_t t = 0; t < c; ++t) {
        for (const auto& r : m.dists[t]) {
            for (std::uint64_t i = r.range.start; i <= r.range.last(); ++i) {
                mu[t].emplace_back(static_cast<NodeId>(i - 1), r.prob);
            }
        }
    }

    auto adj = g.fully_connected ? std::vector<std::vector<bool>>{} : g.adjacency();
    auto allowed = [&](NodeId u, NodeId w) { return g.fully_connected || adj[u][w]; };

    FiniteMemoryStrategy f;
    f.memory = c;
    f.init = 1 % c;
    f.next.assign(c, std::vector<std::uint64_t>(n));
    f.emit.assign(c, std::vector<Distribution>(n));
    for (std::uint64_t t = 0; t < c; ++t) {
        for (std::size_t w = 0; w < n; ++w) f.next[t][w] = (t + 1) % c;
    }

    std::vector<std::vector<bool>> reach(c, std::vector<bool>(n, false));
    std::deque<std::pair<std::uint64_t, NodeId>> queue{{f.init, g.init}};
    reach[f.init][g.init] = true;
    while (!queue.empty()) {
        auto [t, x] = queue.front();
        queue.pop_front();
        for (const auto& [w, p] : mu[t]) {
            if (p <= 0.0) continue;
            if (!allowed(x, w)) throw EdgeViolationError(x, w);
            std::uint64_t t2 = (t + 1) % c;
            if (!reach[t2][w]) {
                reach[t2][w] = true;
                queue.emplace_back(t2, w);
            }
        }
    }

    for (std::uint64_t t = 0; t < c; ++t) {
        for (std::size_t u = 0; u < n; ++u) {
            bool ok = std::all_of(mu[t].begin(), mu[t].end(),
                                  [&](const auto& e) { return allowed(static_cast<NodeId>(u), e.first); });
            if (ok) {
                f.emit[t][u] = mu[t];
            } else {
                auto succ = g.successors(static_cast<NodeId>(u));
                for (NodeId w : succ) f.emit[t][u].emplace_back(w, 1.0 / static_cast<double>(succ.size()));
            }
        }
    }
    return f;
}

StrategyExpr compose(const std::string& stem, const std::vector<StrategyExpr>& parts) {
    if (parts.empty()) throw DomainError("compose needs at least one part");
    StrategyExpr acc = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;) {
        std::string name = i == 0 ? stem : stem + "." + std::to_string(i + 1);
        acc = StrategyExpr::mix(name, parts[i], acc);
    }
    return acc;
}

void validate_finite_memory(const FiniteMemoryStrategy& f, const PatrollingGame& g) {
    require_valid(g);
    if (f.memory == 0) throw ValidationError("finite-memory strategy needs memory >= 1");
    if (f.init >= f.memory) throw ValidationError("initial memory element out of range");
    if (f.next.size() != f.memory || f.emit.size() != f.memory) {
        throw ValidationError("finite-memory tables must have one row per memory element");
    }
    auto adj = g.fully_connected ? std::vector<std::vector<bool>>{} : g.adjacency();
    for (std::uint64_t m = 0; m < f.memory; ++m) {
        if (f.next[m].size() != g.nodes || f.emit[m].size() != g.nodes) {
            throw ValidationError("finite-memory row " + std::to_string(m) + " must have one entry per node");
        }
        for (std::size_t u = 0; u < g.nodes; ++u) {
            if (f.next[m][u] >= f.memory) throw ValidationError("memory update out of range");
            const Distribution& d = f.emit[m][u];
            double sum = 0.0;
            for (const auto& [w, p] : d) {
                if (w >= g.nodes) throw ValidationError("emission to node out of range");
                if (!(p >= 0.0 && p <= 1.0 + 1e-12)) throw ValidationError("emission probability outside [0,1]");
                if (p > 0.0 && !g.fully_connected && !adj[u][w]) throw EdgeViolationError(u, w);
                sum += p;
            }
            double tol = 1e-12 * std::max<double>(1.0, static_cast<double>(d.size()));
            if (std::fabs(sum - 1.0) > tol) {
                throw ValidationError("emission at memory " + std::to_string(m) + ", node " + std::to_string(u) +
                                      " sums to " + std::to_string(sum));
            }
        }
    }
}

}  // namespace patrol
