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

#include "patrol/game.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace patrol {

Rational parse_rational(const std::string& text) {
    auto fail = [&]() -> Rational { throw ValidationError("not a rational number: '" + text + "'"); };
    if (text.empty()) return fail();
    auto slash = text.find('/');
    auto digits = [](const std::string& s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    std::string body = text;
    bool negative = false;
    if (body[0] == '-') {
        negative = true;
        body = body.substr(1);
    }
    Rational r;
    if (slash != std::string::npos) {
        std::string num = body.substr(0, body.find('/'));
        std::string den = body.substr(body.find('/') + 1);
        if (!digits(num) || !digits(den)) return fail();
        BigInt d(den);
        if (d == 0) return fail();
        r = Rational(BigInt(num), d);
    } else {
        auto dot = body.find('.');
        std::string ip = dot == std::string::npos ? body : body.substr(0, dot);
        std::string fp = dot == std::string::npos ? "" : body.substr(dot + 1);
        if (ip.empty()) ip = "0";
        if (!digits(ip) || (!fp.empty() && !digits(fp))) return fail();
        BigInt scale = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
        r = Rational(BigInt(ip + fp), scale);
    }
    return negative ? Rational(-r) : r;
}

double round_significant(double v, int digits) {
    if (!std::isfinite(v) || v == 0.0) return v;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return std::strtod(buf, nullptr);
}

std::uint64_t PatrollingGame::attack_length(NodeId u) const {
    auto it = attack_len.find(u);
    if (it == attack_len.end()) throw DomainError("node " + std::to_string(u) + " is not a target");
    return it->second;
}

std::uint64_t PatrollingGame::max_attack_len() const {
    std::uint64_t m = 0;
    for (const auto& [u, d] : attack_len) m = std::max(m, d);
    return m;
}

std::vector<std::vector<bool>> PatrollingGame::adjacency() const {
    std::vector<std::vector<bool>> adj(nodes, std::vector<bool>(nodes, fully_connected));
    if (!fully_connected) {
        for (const auto& [a, b] : edges) {
            if (a < nodes && b < nodes) adj[a][b] = true;
        }
    }
    return adj;
}

std::vector<NodeId> PatrollingGame::successors(NodeId u) const {
    std::vector<NodeId> out;
    if (fully_connected) {
        out.resize(nodes);
        for (std::size_t i = 0; i < nodes; ++i) out[i] = static_cast<NodeId>(i);
        return out;
    }
    for (const auto& [a, b] : edges) {
        if (a == u) out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ValidationReport validate_game(const PatrollingGame& g) {
    ValidationReport r;
    auto add = [&](std::string msg) { r.violations.push_back(std::move(msg)); };

    if (g.nodes == 0) add("game has no nodes");

    std::set<NodeId> targets;
    for (NodeId t : g.targets) {
        if (t >= g.nodes) add("target " + std::to_string(t) + " out of range");
        if (!targets.insert(t).second) add("target " + std::to_string(t) + " listed twice");
    }
    if (g.init >= g.nodes) add("init " + std::to_string(g.init) + " out of range");
    if (!targets.count(g.init)) add("init not a target");

    for (const auto& [u, d] : g.attack_len) {
        if (!targets.count(u)) add("attack length given for non-target node " + std::to_string(u));
        if (d < 1) add("attack length of node " + std::to_string(u) + " must be positive");
    }
    for (NodeId t : targets) {
        if (!g.attack_len.count(t)) add("target " + std::to_string(t) + " has no attack length");
    }

    if (g.fully_connected) {
        if (!g.edges.empty()) add("fully connected game must not list explicit edges");
    } else {
        std::vector<bool> has_out(g.nodes, false);
        std::set<std::pair<NodeId, NodeId>> seen;
        for (const auto& e : g.edges) {
            if (e.first >= g.nodes || e.second >= g.nodes) {
                add("edge (" + std::to_string(e.first) + ", " + std::to_string(e.second) + ") out of range");
                continue;
            }
            if (!seen.insert(e).second) {
                add("edge (" + std::to_string(e.first) + ", " + std::to_string(e.second) + ") listed twice");
            }
            has_out[e.first] = true;
        }
        for (std::size_t u = 0; u < g.nodes; ++u) {
            if (!has_out[u]) add("node " + std::to_string(u) + " has no outgoing edge");
        }
    }
    return r;
}

void require_valid(const PatrollingGame& g) {
    auto report = validate_game(g);
    if (!report.ok()) throw ValidationError("invalid game: " + report.violations.front());
}

Signature::Signature(std::initializer_list<std::pair<std::uint64_t, std::uint64_t>> counts) {
    for (const auto& [k, n] : counts) add(k, n);
}

void Signature::add(std::uint64_t k, std::uint64_t n) {
    if (k == 0) throw DomainError("attack length must be positive");
    if (n == 0) return;
    auto& slot = counts_[k];
    slot = checked_add(slot, n, "signature count");
}

std::uint64_t Signature::count(std::uint64_t k) const {
    auto it = counts_.find(k);
    return it == counts_.end() ? 0 : it->second;
}

std::uint64_t Signature::total() const {
    std::uint64_t sum = 0;
    for (const auto& [k, n] : counts_) sum = checked_add(sum, n, "signature total");
    return sum;
}

bool Signature::is_well_formed() const {
    return std::all_of(counts_.begin(), counts_.end(), [](const auto& kv) { return kv.second % kv.first == 0; });
}

Signature signature_of(const PatrollingGame& g) {
    Signature s;
    for (NodeId t : g.targets) s.add(g.attack_length(t), 1);
    return s;
}

Rational upper_bound_value(const Signature& s) {
    if (s.empty()) throw DomainError("upper bound of an empty signature");
    Rational sum = 0;
    for (const auto& [k, n] : s.counts()) sum += Rational(BigInt(n), BigInt(k));
    return 1 / sum;
}

PatrollingGame fully_connected_game(const Signature& s, std::uint64_t node_cap) {
    std::uint64_t total = s.total();
    if (total > node_cap) throw SizeLimitError("explicit game too large", total, node_cap);
    PatrollingGame g;
    g.nodes = total;
    g.fully_connected = true;
    NodeId next = 0;
    for (const auto& [k, n] : s.counts()) {
        for (std::uint64_t i = 0; i < n; ++i, ++next) {
            g.targets.push_back(next);
            g.attack_len[next] = k;
        }
    }
    g.init = 0;
    return g;
}

}  // namespace patrol
