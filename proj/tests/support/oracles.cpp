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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "patrol/evaluator.hpp"

namespace patrol::oracle {

double value_modular(const ModularStrategy& m, const PatrollingGame& g) {
    double best = 1.0;
    for (std::uint64_t phase = 0; phase < m.period; ++phase) {
        for (NodeId u : g.targets) {
            double miss = 1.0;
            for (std::uint64_t j = 0; j < g.attack_length(u); ++j) {
                miss *= 1.0 - m.prob((phase + j) % m.period, static_cast<std::uint64_t>(u) + 1);
            }
            best = std::min(best, 1.0 - miss);
        }
    }
    return best;
}

std::uint64_t recursion_variable_count(std::uint64_t n, std::uint64_t d) {
    if (n % d == 0 || d % n == 0) return 0;
    if (n > d) return 1 + recursion_variable_count(n % d, d);
    return recursion_variable_count(n, d % n);
}

Rational upper_bound(const Signature& s) {
    Rational sum = 0;
    for (const auto& [k, n] : s.counts()) sum += Rational(BigInt(n), BigInt(k));
    return 1 / sum;
}

bool two_colorable(std::uint32_t ground, const std::vector<Hyperedge>& edges) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ground); ++mask) {
        bool ok = true;
        for (const auto& e : edges) {
            int ones = 0;
            for (auto x : e) ones += (mask >> x) & 1;
            if (ones == 0 || ones == 3) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

bool special_colorable(const LabeledDigraph& h, std::uint32_t k) {
    const std::size_t n = h.n;
    if (n % k != 0) return false;
    std::vector<std::uint32_t> c(n, 0);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= k;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t x = code;
        std::vector<std::size_t> size(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            c[i] = static_cast<std::uint32_t>(x % k) + 1;
            x /= k;
            ++size[c[i] - 1];
        }
        if (std::any_of(size.begin(), size.end(), [&](std::size_t s) { return s != n / k; })) continue;
        bool ok = true;
        for (const auto& [a, b] : h.arcs) {
            if (c[b] == c[a] % k + 1) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

bool embeds(const LabeledDigraph& pattern, const PatrollingGame& g) {
    const auto adj = g.adjacency();
    std::vector<NodeId> image(pattern.n);
    std::vector<bool> used(g.nodes, false);
    std::function<bool(std::size_t)> place = [&](std::size_t x) {
        if (x == pattern.n) {
            for (const auto& [a, b] : pattern.arcs) {
                if (!adj[image[a]][image[b]]) return false;
            }
            return true;
        }
        for (NodeId u = 0; u < g.nodes; ++u) {
            if (used[u] || !g.is_target(u) || g.attack_length(u) != pattern.label[x]) continue;
            used[u] = true;
            image[x] = u;
            if (place(x + 1)) return true;
            used[u] = false;
        }
        return false;
    };
    return place(0);
}

bool characteristic_arc(std::uint64_t k, std::uint64_t i, std::uint64_t k2, std::uint64_t i2) {
    for (std::uint64_t l = 0; l < k * k2; ++l) {
        if (l % k == i && (l + 1) % k2 == i2) return true;
    }
    return false;
}

double best_memoryless_on_grid(const PatrollingGame& g, std::uint64_t grid) {
    // All compositions of `grid` units over the successors of each node.
    std::vector<std::vector<Distribution>> options(g.nodes);
    for (NodeId u = 0; u < g.nodes; ++u) {
        auto succ = g.successors(u);
        std::vector<std::uint64_t> parts(succ.size(), 0);
        std::function<void(std::size_t, std::uint64_t)> split = [&](std::size_t i, std::uint64_t left) {
            if (i + 1 == succ.size()) {
                parts[i] = left;
                Distribution d;
                for (std::size_t j = 0; j < succ.size(); ++j) {
                    if (parts[j]) d.emplace_back(succ[j], static_cast<double>(parts[j]) / static_cast<double>(grid));
                }
                options[u].push_back(d);
                return;
            }
            for (std::uint64_t x = 0; x <= left; ++x) {
                parts[i] = x;
                split(i + 1, left - x);
            }
        };
        split(0, grid);
    }
    FiniteMemoryStrategy f;
    f.memory = 1;
    f.next = {std::vector<std::uint64_t>(g.nodes, 0)};
    f.emit = {std::vector<Distribution>(g.nodes)};
    double best = 0.0;
    std::function<void(NodeId)> pick = [&](NodeId u) {
        if (u == g.nodes) {
            best = std::max(best, patrol::value_finite_memory(f, g).value);
            return;
        }
        for (const auto& d : options[u]) {
            f.emit[0][u] = d;
            pick(u + 1);
        }
    };
    pick(0);
    return best;
}

PatrollingGame uniform_game(std::size_t nodes, std::uint64_t d) {
    PatrollingGame g;
    g.nodes = nodes;
    g.fully_connected = true;
    for (NodeId u = 0; u < nodes; ++u) {
        g.targets.push_back(u);
        g.attack_len[u] = d;
    }
    return g;
}

std::vector<Characteristic> alternating_characteristics(const Rational& p) {
    const std::map<NodeId, Rational> mu[2] = {{{0, 1 - p}, {2, p}}, {{1, 1 - p}, {2, p}}};
    auto at = [](const std::map<NodeId, Rational>& d, NodeId u) {
        auto it = d.find(u);
        return it == d.end() ? Rational(0) : it->second;
    };
    std::vector<Characteristic> out;
    for (int phase = 0; phase < 2; ++phase) {
        for (NodeId r = 0; r < 3; ++r) {
            Characteristic c;
            c.root = r;
            c.step = mu[phase];
            std::map<NodeId, Rational> two;
            for (NodeId u = 0; u < 3; ++u) {
                Rational v = at(mu[phase], u);
                for (NodeId w = 0; w < 3; ++w) {
                    if (w != u) v += at(mu[phase], w) * at(mu[1 - phase], u);
                }
                two[u] = v;
            }
            c.levels.push_back(two);
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace patrol::oracle
