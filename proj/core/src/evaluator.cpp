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

#include "patrol/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <set>

namespace patrol {

namespace {

constexpr std::uint64_t kEventCap = 400'000'000;
constexpr std::size_t kDirectWindow = 64;

struct Event {
    std::uint64_t phase;
    double p;
};

}  // namespace

double attval_modular(const ModularStrategy& m, const PatrollingGame& g, std::uint64_t phase, NodeId u) {
    if (!g.is_target(u)) throw DomainError("node " + std::to_string(u) + " is not a target");
    if (phase >= m.period) throw DomainError("phase out of range");
    const std::uint64_t d = g.attack_length(u);
    const std::uint64_t c = m.period;
    const std::uint64_t idx = static_cast<std::uint64_t>(u) + 1;
    auto window_log = [&](std::uint64_t len) {
        double acc = 0.0;
        for (std::uint64_t j = 0; j < len; ++j) acc += std::log1p(-m.prob((phase + j) % c, idx));
        return acc;
    };
    double log_prod = 0.0;
    if (d >= c) {
        double full = window_log(c);
        log_prod = full * static_cast<double>(d / c);
        if (std::isinf(full)) log_prod = full;
        log_prod += window_log(d % c);
    } else {
        log_prod = window_log(d);
    }
    return -std::expm1(log_prod);
}

ModularValue value_modular(const ModularStrategy& m, const PatrollingGame& g) {
    require_valid(g);
    if (m.period == 0 || m.dists.size() != m.period) throw ValidationError("modular strategy has inconsistent period");
    if (m.max_node() > g.nodes) throw ValidationError("modular strategy refers to nodes outside the game");
    const std::uint64_t c = m.period;
    const std::uint64_t n = g.nodes;

    // Interval boundaries (1-based node indices).
    std::vector<std::uint64_t> bounds{1, n + 1};
    std::uint64_t prev_idx = 0, prev_d = 0;
    for (const auto& [u, d] : g.attack_len) {
        std::uint64_t idx = static_cast<std::uint64_t>(u) + 1;
        if (!(prev_idx + 1 == idx && prev_d == d)) bounds.push_back(idx);
        if (prev_idx != 0 && prev_idx + 1 != idx) bounds.push_back(prev_idx + 1);
        prev_idx = idx;
        prev_d = d;
    }
    if (prev_idx != 0) bounds.push_back(prev_idx + 1);
    for (const auto& dist : m.dists) {
        for (const auto& r : dist) {
            bounds.push_back(r.range.start);
            bounds.push_back(r.range.last() + 1);
        }
    }
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
    while (!bounds.empty() && bounds.back() > n + 1) bounds.pop_back();
    const std::size_t K = bounds.size() - 1;

    std::vector<std::uint64_t> dlen(K, 0);
    for (std::size_t i = 0; i < K; ++i) {
        auto it = g.attack_len.find(static_cast<NodeId>(bounds[i] - 1));
        if (it != g.attack_len.end()) dlen[i] = it->second;
    }

    std::vector<std::vector<Event>> events(K);
    std::uint64_t total = 0;
    for (std::uint64_t t = 0; t < c; ++t) {
        for (const auto& r : m.dists[t]) {
            auto it = std::lower_bound(bounds.begin(), bounds.end(), r.range.start);
            for (std::size_t i = static_cast<std::size_t>(it - bounds.begin()); i < K && bounds[i] <= r.range.last();
                 ++i) {
                if (dlen[i] == 0) continue;
                events[i].push_back({t, r.prob});
                if (++total > kEventCap) throw SizeLimitError("modular evaluation event count", total, kEventCap);
            }
        }
    }

    ModularValue best;
    best.value = std::numeric_limits<double>::infinity();
    auto offer = [&](double v, std::uint64_t phase, std::size_t i) {
        if (v < best.value) {
            best.value = v;
            best.phase = phase;
            best.target = static_cast<NodeId>(bounds[i] - 1);
        }
    };

    std::vector<double> prefix_log;
    std::vector<std::uint64_t> prefix_ones;
    std::vector<std::uint64_t> phases;
    for (std::size_t i = 0; i < K; ++i) {
        if (dlen[i] == 0) continue;
        const auto& ev = events[i];
        if (ev.empty()) {
            offer(0.0, 0, i);
            continue;
        }
        const std::uint64_t d = dlen[i];
        const std::uint64_t q = d / c, r = d % c;
        const std::size_t E = ev.size();

        phases.assign(2 * E, 0);
        prefix_log.assign(2 * E + 1, 0.0);
        prefix_ones.assign(2 * E + 1, 0);
        for (std::size_t j = 0; j < 2 * E; ++j) {
            const Event& e = ev[j % E];
            phases[j] = e.phase + (j >= E ? c : 0);
            bool one = e.p >= 1.0;
            prefix_log[j + 1] = prefix_log[j] + (one ? 0.0 : std::log1p(-e.p));
            prefix_ones[j + 1] = prefix_ones[j] + (one ? 1 : 0);
        }
        const double full_log = prefix_log[E];
        const bool full_zero = prefix_ones[E] > 0;

        for (std::size_t j = 0; j < E; ++j) {
            std::uint64_t s = (ev[j].phase + 1) % c;
            // events with phase in [s, s + r)
            std::size_t a = static_cast<std::size_t>(std::lower_bound(phases.begin(), phases.end(), s) - phases.begin());
            std::size_t b = static_cast<std::size_t>(std::lower_bound(phases.begin(), phases.end(), s + r) - phases.begin());
            bool zero = (q > 0 && full_zero) || prefix_ones[b] - prefix_ones[a] > 0;
            double v;
            if (zero) {
                v = 1.0;
            } else {
                double lw;
                if (b - a <= kDirectWindow) {
                    lw = 0.0;
                    for (std::size_t x = a; x < b; ++x) lw += std::log1p(-ev[x % E].p);
                } else {
                    lw = prefix_log[b] - prefix_log[a];
                }
                v = -std::expm1(static_cast<double>(q) * full_log + lw);
            }
            offer(v, s, i);
        }
    }
    if (!std::isfinite(best.value)) best.value = 1.0;
    return best;
}

std::vector<ReachState> reachable_states(const FiniteMemoryStrategy& f, const PatrollingGame& g) {
    const std::size_t n = g.nodes;
    std::vector<bool> seen(f.memory * n, false);
    std::vector<ReachState> order{{f.init, g.init}};
    seen[f.init * n + g.init] = true;
    for (std::size_t head = 0; head < order.size(); ++head) {
        ReachState s = order[head];
        for (const auto& [w, p] : f.emit[s.mem][s.node]) {
            if (p <= 0.0) continue;
            ReachState t{f.next[s.mem][w], w};
            if (!seen[t.mem * n + t.node]) {
                seen[t.mem * n + t.node] = true;
                order.push_back(t);
            }
        }
    }
    return order;
}

FiniteMemoryValue value_finite_memory(const FiniteMemoryStrategy& f, const PatrollingGame& g) {
    validate_finite_memory(f, g);
    const std::size_t n = g.nodes;
    auto states = reachable_states(f, g);
    const std::size_t S = states.size();
    std::vector<std::int64_t> id(f.memory * n, -1);
    for (std::size_t i = 0; i < S; ++i) id[states[i].mem * n + states[i].node] = static_cast<std::int64_t>(i);

    std::vector<NodeId> targets;
    for (const auto& [u, d] : g.attack_len) targets.push_back(u);
    const std::size_t T = targets.size();
    const std::uint64_t dhat = g.max_attack_len();

    FiniteMemoryValue out;
    out.reachable_states = S;
    out.value = std::numeric_limits<double>::infinity();

    std::vector<double> prev(S * T, 0.0), cur(S * T, 0.0);
    for (std::uint64_t t = 1; t <= dhat; ++t) {
        for (std::size_t si = 0; si < S; ++si) {
            const ReachState& s = states[si];
            const Distribution& em = f.emit[s.mem][s.node];
            for (std::size_t ti = 0; ti < T; ++ti) {
                NodeId u = targets[ti];
                double acc = 0.0;
                for (const auto& [w, p] : em) {
                    if (p <= 0.0) continue;
                    if (w == u) {
                        acc += p;
                    } else {
                        auto nx = id[f.next[s.mem][w] * n + w];
                        acc += p * prev[static_cast<std::size_t>(nx) * T + ti];
                    }
                }
                cur[si * T + ti] = acc;
            }
        }
        for (std::size_t si = 0; si < S; ++si) {
            for (std::size_t ti = 0; ti < T; ++ti) {
                if (g.attack_len.at(targets[ti]) != t) continue;
                double v = cur[si * T + ti];
                if (v < out.value) {
                    out.value = v;
                    out.state = states[si];
                    out.target = targets[ti];
                }
            }
        }
        std::swap(prev, cur);
    }
    return out;
}

FiniteMemoryValue oracle_value_by_path_enumeration(const FiniteMemoryStrategy& f, const PatrollingGame& g) {
    validate_finite_memory(f, g);
    if (g.nodes > 8) throw SizeLimitError("path enumeration needs at most 8 nodes", g.nodes, 8);
    if (g.max_attack_len() > 5) throw SizeLimitError("path enumeration needs attack lengths <= 5", g.max_attack_len(), 5);

    std::set<std::pair<std::uint64_t, NodeId>> seen{{f.init, g.init}};
    std::vector<std::pair<std::uint64_t, NodeId>> stack{{f.init, g.init}};
    while (!stack.empty()) {
        auto [m, x] = stack.back();
        stack.pop_back();
        for (const auto& [w, p] : f.emit[m][x]) {
            if (p > 0.0 && seen.insert({f.next[m][w], w}).second) stack.emplace_back(f.next[m][w], w);
        }
    }

    // Probability that a path of at most `left` further steps from (m, x) visits u.
    std::function<double(std::uint64_t, NodeId, NodeId, std::uint64_t)> visit =
        [&](std::uint64_t m, NodeId x, NodeId u, std::uint64_t left) -> double {
        if (left == 0) return 0.0;
        double acc = 0.0;
        for (const auto& [w, p] : f.emit[m][x]) {
            if (p <= 0.0) continue;
            acc += w == u ? p : p * visit(f.next[m][w], w, u, left - 1);
        }
        return acc;
    };

    FiniteMemoryValue out;
    out.reachable_states = seen.size();
    out.value = std::numeric_limits<double>::infinity();
    for (const auto& [m, x] : seen) {
        for (const auto& [u, d] : g.attack_len) {
            double v = visit(m, x, u, d);
            if (v < out.value) {
                out.value = v;
                out.state = {m, x};
                out.target = u;
            }
        }
    }
    return out;
}

}  // namespace patrol
