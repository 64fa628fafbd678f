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

#include "patrol/epsopt.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace patrol {

Rational Characteristic::c(std::uint64_t k, NodeId u) const {
    if (k == 0) return u == root ? Rational(1) : Rational(0);
    if (k == 1) {
        auto it = step.find(u);
        return it == step.end() ? Rational(0) : it->second;
    }
    if (k - 2 >= levels.size()) return 0;
    auto it = levels[k - 2].find(u);
    return it == levels[k - 2].end() ? Rational(0) : it->second;
}

GridSpec grid_for(const PatrollingGame& g, const Rational& eps) {
    if (!(eps > 0 && eps < 1)) throw DomainError("eps must lie in (0, 1)");
    Rational x = Rational(BigInt(g.nodes) * BigInt(g.max_attack_len())) / eps;
    BigInt q = numerator(x) / denominator(x);
    if (q * denominator(x) != numerator(x)) q += 1;
    if (q > BigInt(std::numeric_limits<std::uint64_t>::max())) throw OverflowError("grid denominator overflows 64 bits");
    return {q.convert_to<std::uint64_t>()};
}

RationalDist round_distribution(const RationalDist& dist, std::uint64_t grid) {
    if (grid == 0) throw DomainError("grid denominator must be positive");
    Rational total = 0;
    for (const auto& [u, p] : dist) {
        if (p < 0) throw DomainError("negative probability");
        total += p;
    }
    if (total != 1) throw DomainError("distribution does not sum to 1");
    const BigInt G(grid);
    RationalDist out;
    Rational carry = 0;
    for (const auto& [u, p] : dist) {
        Rational x = (p + carry) * G;
        BigInt k = numerator(x) / denominator(x);
        Rational kept(k, G);
        carry = p + carry - kept;
        out.emplace_back(u, kept);
    }
    return out;
}

RationalDist round_distribution(const Distribution& dist, std::uint64_t grid) {
    Rational total = 0;
    RationalDist exact;
    for (const auto& [u, p] : dist) {
        if (!(p >= 0.0)) throw DomainError("negative or undefined probability");
        exact.emplace_back(u, Rational(p));
        total += exact.back().second;
    }
    if (total == 0) throw DomainError("distribution has no mass");
    for (auto& e : exact) e.second /= total;
    return round_distribution(exact, grid);
}

Rational char_value(const Characteristic& c, const PatrollingGame& g) {
    Rational best = 1;
    for (const auto& [u, d] : g.attack_len) best = std::min(best, c.c(d, u));
    return best;
}

bool is_successor(const Characteristic& c, const std::map<NodeId, Characteristic>& succ, const PatrollingGame& g) {
    for (const auto& [v, p] : c.step) {
        if (p == 0) continue;
        auto it = succ.find(v);
        if (it == succ.end() || it->second.root != v) return false;
    }
    const std::uint64_t dhat = g.max_attack_len();
    for (std::uint64_t k = 2; k <= dhat; ++k) {
        for (const auto& [u, d] : g.attack_len) {
            Rational rhs = c.c(1, u);
            for (const auto& [v, p] : c.step) {
                if (p == 0 || v == u) continue;
                rhs += p * succ.at(v).c(k - 1, u);
            }
            if (rhs != c.c(k, u)) return false;
        }
    }
    return true;
}

namespace {

// Backtracking search for a successor assignment of c drawn from `pool`.
bool has_successors_in(const Characteristic& c, const std::vector<const Characteristic*>& pool,
                       const PatrollingGame& g) {
    std::vector<NodeId> vs;
    for (const auto& [v, p] : c.step) {
        if (p > 0) vs.push_back(v);
    }
    std::vector<std::vector<const Characteristic*>> cands(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) {
        for (const auto* q : pool) {
            if (q->root == vs[i]) cands[i].push_back(q);
        }
        if (cands[i].empty()) return false;
    }
    const std::uint64_t dhat = g.max_attack_len();
    std::vector<std::pair<std::uint64_t, NodeId>> cons;
    std::vector<Rational> need;
    for (std::uint64_t k = 2; k <= dhat; ++k) {
        for (const auto& [u, d] : g.attack_len) {
            cons.emplace_back(k, u);
            need.push_back(c.c(k, u) - c.c(1, u));
            if (need.back() < 0) return false;
        }
    }
    std::vector<Rational> sum(cons.size(), Rational(0));
    std::function<bool(std::size_t)> dfs = [&](std::size_t i) -> bool {
        if (i == vs.size()) {
            for (std::size_t j = 0; j < cons.size(); ++j) {
                if (sum[j] != need[j]) return false;
            }
            return true;
        }
        const Rational& pv = c.step.at(vs[i]);
        for (const auto* q : cands[i]) {
            bool ok = true;
            std::vector<Rational> saved = sum;
            for (std::size_t j = 0; j < cons.size(); ++j) {
                if (cons[j].second == vs[i]) continue;
                sum[j] += pv * q->c(cons[j].first - 1, cons[j].second);
                if (sum[j] > need[j]) ok = false;
            }
            if (ok && dfs(i + 1)) return true;
            sum = std::move(saved);
        }
        return false;
    };
    return dfs(0);
}

}  // namespace

std::vector<Characteristic> greatest_closed_subset(const std::vector<Characteristic>& pool, const PatrollingGame& g) {
    std::vector<const Characteristic*> alive;
    for (const auto& c : pool) alive.push_back(&c);
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<const Characteristic*> next;
        for (const auto* c : alive) {
            if (has_successors_in(*c, alive, g)) {
                next.push_back(c);
            } else {
                changed = true;
            }
        }
        alive = std::move(next);
    }
    bool rooted = std::any_of(alive.begin(), alive.end(), [&](const auto* c) { return c->root == g.init; });
    std::vector<Characteristic> out;
    if (!rooted) return out;
    for (const auto* c : alive) out.push_back(*c);
    return out;
}

namespace {

using i64 = std::int64_t;

struct Plan {
    NodeId root = 0;
    std::vector<i64> step;            // numerators over G, one per node
    std::vector<std::vector<i64>> lv; // lv[k-1][t] over G^k, k = 1..depth
};

class Search {
public:
    Search(const PatrollingGame& g, i64 G, const EpsLimits& limits) : g_(g), n_(g.nodes), G_(G), limits_(limits) {
        for (const auto& [u, d] : g.attack_len) {
            targets_.push_back(u);
            tdl_.push_back(d);
        }
        dhat_ = g.max_attack_len();
        depth_ = std::max<std::uint64_t>(dhat_ - 1, 1);
        pw_.assign(dhat_ + 2, 1);
        for (std::size_t k = 1; k < pw_.size(); ++k) pw_[k] = pw_[k - 1] * G_;
        generate();
    }

    std::uint64_t plan_count() const { return plans_.size(); }
    i64 top_scale() const { return pw_[dhat_]; }

    // Greatest set of plans that pass the threshold and have successors inside it.
    bool feasible(i64 tau) {
        const std::size_t P = plans_.size();
        alive_.assign(P, false);
        assign_.assign(P, {});
        for (std::size_t i = 0; i < P; ++i) alive_[i] = locally_ok(plans_[i], tau);
        for (bool changed = true; changed;) {
            changed = false;
            build_candidates();
            for (std::size_t i = 0; i < P; ++i) {
                if (!alive_[i]) continue;
                if (!assign_[i].empty() &&
                    std::all_of(assign_[i].begin(), assign_[i].end(), [&](std::size_t q) { return alive_[q]; })) {
                    continue;
                }
                if (!find_assignment(i, tau)) {
                    alive_[i] = false;
                    assign_[i].clear();
                    changed = true;
                }
            }
        }
        for (std::size_t i = 0; i < P; ++i) {
            if (alive_[i] && plans_[i].root == g_.init) return true;
        }
        return false;
    }

    // Characteristics reachable from the first alive plan rooted at the initial node.
    std::pair<std::vector<Characteristic>, std::vector<std::map<NodeId, std::size_t>>> materialize() const {
        std::size_t start = plans_.size();
        for (std::size_t i = 0; i < plans_.size(); ++i) {
            if (alive_[i] && plans_[i].root == g_.init) {
                start = i;
                break;
            }
        }
        if (start == plans_.size()) throw std::logic_error("no alive plan at the initial node");
        std::vector<std::size_t> order{start};
        std::map<std::size_t, std::size_t> index{{start, 0}};
        for (std::size_t h = 0; h < order.size(); ++h) {
            for (std::size_t q : assign_[order[h]]) {
                if (index.emplace(q, order.size()).second) order.push_back(q);
            }
        }
        std::vector<Characteristic> chars;
        std::vector<std::map<NodeId, std::size_t>> next;
        for (std::size_t p : order) {
            const Plan& pl = plans_[p];
            Characteristic c;
            c.root = pl.root;
            for (std::size_t v = 0; v < n_; ++v) {
                if (pl.step[v] > 0) c.step[static_cast<NodeId>(v)] = Rational(pl.step[v], G_);
            }
            std::vector<std::size_t> vs = support(pl);
            std::map<NodeId, std::size_t> succ;
            for (std::size_t j = 0; j < vs.size(); ++j) succ[static_cast<NodeId>(vs[j])] = index.at(assign_[p][j]);
            for (std::uint64_t k = 2; k <= dhat_; ++k) {
                std::map<NodeId, Rational> level;
                for (std::size_t t = 0; t < targets_.size(); ++t) {
                    i64 num;
                    if (k <= depth_) {
                        num = pl.lv[k - 1][t];
                    } else {
                        num = pl.step[targets_[t]] * pw_[k - 1];
                        for (std::size_t j = 0; j < vs.size(); ++j) {
                            if (vs[j] == targets_[t]) continue;
                            num += pl.step[vs[j]] * level_of(plans_[assign_[p][j]], k - 1, t);
                        }
                    }
                    level[targets_[t]] = Rational(num, pw_[k]);
                }
                c.levels.push_back(std::move(level));
            }
            chars.push_back(std::move(c));
            next.push_back(std::move(succ));
        }
        return {chars, next};
    }

private:
    i64 level_of(const Plan& q, std::uint64_t k, std::size_t t) const {
        if (k == 0) return q.root == targets_[t] ? 1 : 0;
        return q.lv[k - 1][t];
    }

    std::vector<std::size_t> support(const Plan& p) const {
        std::vector<std::size_t> vs;
        for (std::size_t v = 0; v < n_; ++v) {
            if (p.step[v] > 0) vs.push_back(v);
        }
        std::stable_sort(vs.begin(), vs.end(), [&](std::size_t a, std::size_t b) { return p.step[a] > p.step[b]; });
        return vs;
    }

    bool locally_ok(const Plan& p, i64 tau) const {
        for (std::size_t t = 0; t < targets_.size(); ++t) {
            std::uint64_t d = tdl_[t];
            if (d == dhat_) continue;  // needs the successors
            if (p.lv[d - 1][t] * pw_[dhat_ - d] < tau) return false;
        }
        return true;
    }

    void generate() {
        std::vector<Plan> level1;
        for (std::size_t r = 0; r < n_; ++r) {
            auto succ = g_.successors(static_cast<NodeId>(r));
            std::vector<i64> step(n_, 0);
            std::function<void(std::size_t, i64)> rec = [&](std::size_t i, i64 left) {
                if (i + 1 == succ.size()) {
                    step[succ[i]] = left;
                    Plan p;
                    p.root = static_cast<NodeId>(r);
                    p.step = step;
                    std::vector<i64> l1;
                    for (NodeId u : targets_) l1.push_back(step[u]);
                    p.lv.push_back(std::move(l1));
                    level1.push_back(std::move(p));
                    if (level1.size() > limits_.max_chars) {
                        throw SizeLimitError("characteristic enumeration", level1.size(), limits_.max_chars);
                    }
                    step[succ[i]] = 0;
                    return;
                }
                for (i64 x = left; x >= 0; --x) {
                    step[succ[i]] = x;
                    rec(i + 1, left - x);
                }
                step[succ[i]] = 0;
            };
            rec(0, G_);
        }
        plans_ = std::move(level1);
        std::vector<Plan> base = plans_;
        for (std::uint64_t j = 2; j <= depth_; ++j) plans_ = extend(base, plans_, j);
    }

    // Plans with levels 1..j whose levels are produced by successors from `prev`.
    std::vector<Plan> extend(const std::vector<Plan>& base, const std::vector<Plan>& prev, std::uint64_t j) {
        std::vector<Plan> out;
        std::set<std::pair<std::size_t, std::vector<std::vector<i64>>>> seen;
        std::uint64_t tried = 0;
        for (std::size_t b = 0; b < base.size(); ++b) {
            const Plan& bp = base[b];
            std::vector<std::size_t> vs = support(bp);
            // distinct projections of prev plans rooted at v, onto targets != v
            std::vector<std::vector<const Plan*>> cands(vs.size());
            for (std::size_t i = 0; i < vs.size(); ++i) {
                std::set<std::vector<std::vector<i64>>> keys;
                for (const auto& q : prev) {
                    if (q.root != vs[i]) continue;
                    std::vector<std::vector<i64>> key = q.lv;
                    for (auto& lvl : key) {
                        for (std::size_t t = 0; t < targets_.size(); ++t) {
                            if (targets_[t] == vs[i]) lvl[t] = 0;
                        }
                    }
                    if (keys.insert(key).second) cands[i].push_back(&q);
                }
            }
            std::vector<const Plan*> pick(vs.size());
            std::function<void(std::size_t)> rec = [&](std::size_t i) {
                if (i == vs.size()) {
                    if (++tried > 50 * limits_.max_chars) {
                        throw SizeLimitError("characteristic enumeration", tried, 50 * limits_.max_chars);
                    }
                    Plan p = bp;
                    p.lv.resize(j);
                    for (std::uint64_t k = 2; k <= j; ++k) {
                        p.lv[k - 1].assign(targets_.size(), 0);
                        for (std::size_t t = 0; t < targets_.size(); ++t) {
                            i64 num = bp.step[targets_[t]] * pw_[k - 1];
                            for (std::size_t x = 0; x < vs.size(); ++x) {
                                if (vs[x] == targets_[t]) continue;
                                num += bp.step[vs[x]] * level_of(*pick[x], k - 1, t);
                            }
                            p.lv[k - 1][t] = num;
                        }
                    }
                    if (seen.emplace(b, p.lv).second) {
                        out.push_back(std::move(p));
                        if (out.size() > limits_.max_chars) {
                            throw SizeLimitError("characteristic enumeration", out.size(), limits_.max_chars);
                        }
                    }
                    return;
                }
                for (const Plan* q : cands[i]) {
                    pick[i] = q;
                    rec(i + 1);
                }
            };
            rec(0);
        }
        return out;
    }

    // Per root v: alive plans grouped by the levels used in equalities and
    // reduced to the Pareto front of the top-level contribution.
    void build_candidates() {
        cand_.assign(n_, {});
        for (std::size_t v = 0; v < n_; ++v) {
            std::map<std::vector<i64>, std::vector<std::size_t>> groups;
            for (std::size_t i = 0; i < plans_.size(); ++i) {
                if (!alive_[i] || plans_[i].root != v) continue;
                std::vector<i64> key;
                for (std::uint64_t k = 1; k + 1 <= depth_ && k + 1 <= dhat_ - 1; ++k) {
                    for (std::size_t t = 0; t < targets_.size(); ++t) {
                        if (targets_[t] != v) key.push_back(plans_[i].lv[k - 1][t]);
                    }
                }
                groups[key].push_back(i);
            }
            for (auto& [key, members] : groups) {
                auto score = [&](std::size_t i) {
                    std::vector<i64> s;
                    for (std::size_t t = 0; t < targets_.size(); ++t) {
                        if (targets_[t] != v && tdl_[t] == dhat_) s.push_back(level_of(plans_[i], dhat_ - 1, t));
                    }
                    return s;
                };
                std::vector<std::vector<i64>> scores;
                for (std::size_t i : members) scores.push_back(score(i));
                for (std::size_t a = 0; a < members.size(); ++a) {
                    bool dominated = false;
                    for (std::size_t b = 0; b < members.size() && !dominated; ++b) {
                        if (a == b) continue;
                        bool ge = true, gt = false;
                        for (std::size_t x = 0; x < scores[a].size(); ++x) {
                            if (scores[b][x] < scores[a][x]) ge = false;
                            if (scores[b][x] > scores[a][x]) gt = true;
                        }
                        if (ge && (gt || b < a)) dominated = true;
                    }
                    if (!dominated) cand_[v].push_back(members[a]);
                }
            }
        }
    }

    bool find_assignment(std::size_t pi, i64 tau) {
        const Plan& p = plans_[pi];
        std::vector<std::size_t> vs = support(p);
        for (std::size_t v : vs) {
            if (cand_[v].empty()) return false;
        }
        struct Con {
            std::uint64_t k;  // successor level used
            std::size_t t;
            i64 need;
            bool exact;
        };
        std::vector<Con> cons;
        for (std::uint64_t k = 2; k <= depth_ && k <= dhat_ - 1; ++k) {
            for (std::size_t t = 0; t < targets_.size(); ++t) {
                i64 need = p.lv[k - 1][t] - p.step[targets_[t]] * pw_[k - 1];
                if (need < 0) return false;
                cons.push_back({k - 1, t, need, true});
            }
        }
        for (std::size_t t = 0; t < targets_.size(); ++t) {
            if (tdl_[t] != dhat_) continue;
            i64 need = tau - p.step[targets_[t]] * pw_[dhat_ - 1];
            cons.push_back({dhat_ - 1, t, need, false});
        }
        const std::size_t C = cons.size(), V = vs.size();
        auto contrib = [&](std::size_t x, std::size_t q, const Con& c) -> i64 {
            if (vs[x] == targets_[c.t]) return 0;
            return p.step[vs[x]] * level_of(plans_[q], c.k, c.t);
        };
        std::vector<i64> sufmin((V + 1) * C, 0), sufmax((V + 1) * C, 0);
        for (std::size_t x = V; x-- > 0;) {
            for (std::size_t j = 0; j < C; ++j) {
                i64 lo = std::numeric_limits<i64>::max(), hi = 0;
                for (std::size_t q : cand_[vs[x]]) {
                    i64 v = contrib(x, q, cons[j]);
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
                sufmin[x * C + j] = sufmin[(x + 1) * C + j] + lo;
                sufmax[x * C + j] = sufmax[(x + 1) * C + j] + hi;
            }
        }
        std::vector<i64> sum(C, 0);
        std::vector<std::size_t> pick(V);
        std::function<bool(std::size_t)> dfs = [&](std::size_t x) -> bool {
            for (std::size_t j = 0; j < C; ++j) {
                if (sum[j] + sufmax[x * C + j] < cons[j].need) return false;
                if (cons[j].exact && sum[j] + sufmin[x * C + j] > cons[j].need) return false;
            }
            if (x == V) return true;
            for (std::size_t q : cand_[vs[x]]) {
                for (std::size_t j = 0; j < C; ++j) sum[j] += contrib(x, q, cons[j]);
                pick[x] = q;
                if (dfs(x + 1)) return true;
                for (std::size_t j = 0; j < C; ++j) sum[j] -= contrib(x, q, cons[j]);
            }
            return false;
        };
        if (!dfs(0)) return false;
        assign_[pi] = pick;
        return true;
    }

    const PatrollingGame& g_;
    std::size_t n_;
    i64 G_;
    EpsLimits limits_;
    std::vector<NodeId> targets_;
    std::vector<std::uint64_t> tdl_;
    std::uint64_t dhat_ = 1;
    std::uint64_t depth_ = 1;
    std::vector<i64> pw_;
    std::vector<Plan> plans_;
    std::vector<bool> alive_;
    std::vector<std::vector<std::size_t>> assign_;  // successor plan per support node, in support() order
    std::vector<std::vector<std::size_t>> cand_;
};

}  // namespace

EpsResult synthesize_eps_optimal(const PatrollingGame& g, const Rational& eps, const EpsLimits& limits) {
    require_valid(g);
    if (g.nodes > limits.max_nodes) throw SizeLimitError("too many nodes for eps-optimal synthesis", g.nodes, limits.max_nodes);
    const std::uint64_t dhat = g.max_attack_len();
    if (dhat > limits.max_attack_len) {
        throw SizeLimitError("attack length too large for eps-optimal synthesis", dhat, limits.max_attack_len);
    }
    GridSpec grid = grid_for(g, eps);
    if (grid.denominator > limits.max_grid) {
        throw SizeLimitError("grid denominator too large", grid.denominator, limits.max_grid);
    }
    BigInt scale = 1;
    for (std::uint64_t k = 0; k <= dhat + 1; ++k) scale *= grid.denominator;
    if (scale * BigInt(g.nodes) > (BigInt(1) << 62)) throw OverflowError("grid arithmetic overflows 64 bits");

    Search search(g, static_cast<i64>(grid.denominator), limits);
    i64 lo = 0, hi = search.top_scale();
    if (!search.feasible(0)) throw DomainError("no closed set of characteristics exists");
    while (lo < hi) {
        i64 mid = lo + (hi - lo + 1) / 2;
        if (search.feasible(mid)) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    search.feasible(lo);
    auto [chars, next] = search.materialize();

    for (std::size_t i = 0; i < chars.size(); ++i) {
        std::map<NodeId, Characteristic> succ;
        for (const auto& [v, j] : next[i]) succ[v] = chars[j];
        if (!is_successor(chars[i], succ, g)) throw std::logic_error("materialized characteristic is not consistent");
    }
    if (greatest_closed_subset(chars, g).size() != chars.size()) {
        throw std::logic_error("materialized characteristic set is not closed");
    }

    EpsResult out;
    out.grid = grid.denominator;
    out.chars_enumerated = search.plan_count();
    out.value = 1;
    for (const auto& c : chars) out.value = std::min(out.value, char_value(c, g));

    FiniteMemoryStrategy& f = out.strategy;
    f.memory = chars.size();
    f.init = 0;
    f.next.assign(f.memory, std::vector<std::uint64_t>(g.nodes));
    f.emit.assign(f.memory, std::vector<Distribution>(g.nodes));
    for (std::size_t i = 0; i < chars.size(); ++i) {
        for (std::size_t w = 0; w < g.nodes; ++w) {
            auto it = next[i].find(static_cast<NodeId>(w));
            f.next[i][w] = it == next[i].end() ? i : it->second;
            if (w == chars[i].root) {
                for (const auto& [v, p] : chars[i].step) f.emit[i][w].emplace_back(v, to_double(p));
            } else {
                auto succ = g.successors(static_cast<NodeId>(w));
                for (NodeId v : succ) f.emit[i][w].emplace_back(v, 1.0 / static_cast<double>(succ.size()));
            }
        }
    }
    out.closed_set = std::move(chars);
    return out;
}

}  // namespace patrol
