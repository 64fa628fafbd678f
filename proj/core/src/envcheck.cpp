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

#include "patrol/envcheck.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace patrol {

void LabeledDigraph::finalize() {
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
}

bool LabeledDigraph::has_arc(std::uint32_t a, std::uint32_t b) const {
    return std::binary_search(arcs.begin(), arcs.end(), std::make_pair(a, b));
}

std::vector<std::vector<bool>> LabeledDigraph::matrix() const {
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
    for (const auto& [a, b] : arcs) m[a][b] = true;
    return m;
}

LabeledDigraph build_characteristic_digraph(const Signature& s, std::uint64_t cap) {
    if (!s.is_well_formed()) throw DomainError("characteristic digraph needs a well-formed signature");
    std::uint64_t total = s.total();
    if (total > cap) throw SizeLimitError("characteristic digraph too large", total, cap);

    LabeledDigraph h;
    struct V {
        std::uint64_t k, i;
    };
    std::vector<V> verts;
    for (const auto& [k, count] : s.counts()) {
        for (std::uint64_t i = 0; i < k; ++i) {
            for (std::uint64_t j = 1; j <= count / k; ++j) {
                verts.push_back({k, i});
                h.label.push_back(k);
                h.name.push_back("v" + std::to_string(k) + "[" + std::to_string(i) + "," + std::to_string(j) + "]");
            }
        }
    }
    h.n = verts.size();
    for (std::uint32_t a = 0; a < h.n; ++a) {
        for (std::uint32_t b = 0; b < h.n; ++b) {
            std::uint64_t gcd = std::gcd(verts[a].k, verts[b].k);
            if ((verts[a].i + 1) % gcd == verts[b].i % gcd) h.add_arc(a, b);
        }
    }
    h.finalize();
    return h;
}

LabeledDigraph complement(const PatrollingGame& g) {
    require_valid(g);
    LabeledDigraph h;
    h.n = g.nodes;
    auto adj = g.adjacency();
    for (std::size_t u = 0; u < g.nodes; ++u) {
        h.label.push_back(g.is_target(static_cast<NodeId>(u)) ? g.attack_length(static_cast<NodeId>(u)) : 0);
        h.name.push_back("u" + std::to_string(u));
        for (std::size_t v = 0; v < g.nodes; ++v) {
            if (u != v && !adj[u][v]) h.add_arc(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
        }
    }
    h.finalize();
    return h;
}

namespace {

// Classes of vertices with identical neighbourhoods (apart from each other),
// either mutually adjacent in both directions or not at all.
std::vector<std::vector<std::uint32_t>> twin_classes(const LabeledDigraph& h) {
    auto m = h.matrix();
    auto twins = [&](std::uint32_t x, std::uint32_t y) {
        if (h.label[x] != h.label[y]) return false;
        if (m[x][y] != m[y][x] || m[x][x] != m[y][y]) return false;
        for (std::uint32_t z = 0; z < h.n; ++z) {
            if (z == x || z == y) continue;
            if (m[x][z] != m[y][z] || m[z][x] != m[z][y]) return false;
        }
        return true;
    };
    std::vector<std::vector<std::uint32_t>> classes;
    std::vector<bool> placed(h.n, false);
    for (std::uint32_t x = 0; x < h.n; ++x) {
        if (placed[x]) continue;
        classes.push_back({x});
        placed[x] = true;
        for (std::uint32_t y = x + 1; y < h.n; ++y) {
            if (placed[y]) continue;
            auto& cls = classes.back();
            if (std::all_of(cls.begin(), cls.end(), [&](std::uint32_t z) { return twins(z, y); })) {
                cls.push_back(y);
                placed[y] = true;
            }
        }
    }
    return classes;
}

std::uint64_t low_mask(unsigned bits) { return bits >= 64 ? ~0ULL : ((1ULL << bits) - 1); }

}  // namespace

EmbeddingResult is_sufficiently_connected(const PatrollingGame& g, std::uint64_t node_cap) {
    require_valid(g);
    Signature s = signature_of(g);
    if (!s.is_well_formed()) throw DomainError("sufficient connectivity is defined for well-formed signatures only");
    const std::uint64_t cap = std::min<std::uint64_t>(node_cap, 64);
    if (g.nodes > cap) throw SizeLimitError("environment too large for the embedding search", g.nodes, cap);

    EmbeddingResult res;
    res.pattern = build_characteristic_digraph(s, cap);
    const LabeledDigraph& p = res.pattern;
    const std::size_t n = g.nodes, P = p.n;

    auto adj = g.adjacency();
    std::vector<std::uint64_t> out(n, 0), in(n, 0), label_mask;
    std::uint64_t loops = 0;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (!adj[a][b]) continue;
            out[a] |= 1ULL << b;
            in[b] |= 1ULL << a;
            if (a == b) loops |= 1ULL << a;
        }
    }
    auto pm = p.matrix();
    std::vector<std::uint64_t> dom(P, 0);
    for (std::size_t x = 0; x < P; ++x) {
        for (const auto& [u, d] : g.attack_len) {
            if (d == p.label[x]) dom[x] |= 1ULL << u;
        }
        if (pm[x][x]) dom[x] &= loops;
    }

    auto classes = twin_classes(p);
    std::vector<std::size_t> cls_of(P), pos_in(P);
    for (std::size_t c = 0; c < classes.size(); ++c) {
        for (std::size_t i = 0; i < classes[c].size(); ++i) {
            cls_of[classes[c][i]] = c;
            pos_in[classes[c][i]] = i;
        }
    }

    std::vector<std::int64_t> image(P, -1);
    std::function<bool(std::vector<std::uint64_t>&, std::size_t)> search = [&](std::vector<std::uint64_t>& d,
                                                                               std::size_t placed) -> bool {
        ++res.search_nodes;
        if (placed == P) return true;
        std::size_t x = P;
        int best = 65;
        for (std::size_t y = 0; y < P; ++y) {
            if (image[y] >= 0) continue;
            int c = std::popcount(d[y]);
            if (c < best) {
                best = c;
                x = y;
            }
        }
        if (best == 0) return false;
        for (std::uint64_t m = d[x]; m; m &= m - 1) {
            unsigned a = static_cast<unsigned>(std::countr_zero(m));
            std::vector<std::uint64_t> nd = d;
            bool ok = true;
            image[x] = a;
            for (std::size_t y = 0; y < P && ok; ++y) {
                if (image[y] >= 0) continue;
                nd[y] &= ~(1ULL << a);
                if (pm[x][y]) nd[y] &= out[a];
                if (pm[y][x]) nd[y] &= in[a];
                if (cls_of[y] == cls_of[x]) {
                    nd[y] &= pos_in[y] > pos_in[x] ? ~low_mask(a + 1) : low_mask(a);
                }
                if (nd[y] == 0) ok = false;
            }
            if (ok && search(nd, placed + 1)) return true;
            image[x] = -1;
        }
        return false;
    };

    if (search(dom, 0)) {
        res.connected = true;
        for (std::size_t x = 0; x < P; ++x) res.witness.push_back(static_cast<NodeId>(image[x]));
    }
    return res;
}

bool is_special_equitable(const LabeledDigraph& h, std::uint32_t k, const Coloring& c) {
    if (k == 0 || c.size() != h.n || h.n % k != 0) return false;
    std::vector<std::size_t> count(k + 1, 0);
    for (auto x : c) {
        if (x < 1 || x > k) return false;
        ++count[x];
    }
    for (std::uint32_t j = 1; j <= k; ++j) {
        if (count[j] != h.n / k) return false;
    }
    for (const auto& [a, b] : h.arcs) {
        if (c[b] == c[a] % k + 1) return false;
    }
    return true;
}

std::optional<Coloring> special_equitable_coloring_backtracking(const LabeledDigraph& h, std::uint32_t k) {
    if (k < 2 || k > 63) throw DomainError("number of colors must lie in 2..63");
    if (h.n % k != 0) throw DomainError("vertex count " + std::to_string(h.n) + " not divisible by " + std::to_string(k));
    const std::size_t n = h.n, q = n / k;
    if (n == 0) return Coloring{};

    std::vector<std::vector<std::uint32_t>> out(n), in(n);
    for (const auto& [a, b] : h.arcs) {
        if (a == b) continue;
        out[a].push_back(b);
        in[b].push_back(a);
    }
    auto classes = twin_classes(h);
    std::vector<std::size_t> cls_of(n), pos_in(n);
    for (std::size_t c = 0; c < classes.size(); ++c) {
        for (std::size_t i = 0; i < classes[c].size(); ++i) {
            cls_of[classes[c][i]] = c;
            pos_in[classes[c][i]] = i;
        }
    }
    auto bit = [](std::uint32_t j) { return 1ULL << j; };
    auto nxt = [k](std::uint32_t j) { return j % k + 1; };
    auto prv = [k](std::uint32_t j) { return j == 1 ? k : j - 1; };

    const std::uint64_t all = low_mask(k + 1) & ~1ULL;
    std::vector<std::uint64_t> dom(n, all);
    dom[0] = bit(1);
    Coloring color(n, 0);
    std::vector<std::size_t> count(k + 1, 0);

    std::function<bool(std::vector<std::uint64_t>&, std::size_t)> search = [&](std::vector<std::uint64_t>& d,
                                                                               std::size_t placed) -> bool {
        if (placed == n) return true;
        // capacity: every color must still be able to reach q
        for (std::uint32_t j = 1; j <= k; ++j) {
            std::size_t avail = count[j];
            for (std::size_t y = 0; y < n && avail < q; ++y) {
                if (!color[y] && (d[y] & bit(j))) ++avail;
            }
            if (avail < q) return false;
        }
        std::size_t x = n;
        int best = 65;
        std::size_t best_deg = 0;
        for (std::size_t y = 0; y < n; ++y) {
            if (color[y]) continue;
            int c = std::popcount(d[y]);
            std::size_t deg = out[y].size() + in[y].size();
            if (c < best || (c == best && deg > best_deg)) {
                best = c;
                best_deg = deg;
                x = y;
            }
        }
        if (best == 0) return false;
        for (std::uint64_t m = d[x]; m; m &= m - 1) {
            std::uint32_t j = static_cast<std::uint32_t>(std::countr_zero(m));
            std::vector<std::uint64_t> nd = d;
            color[x] = j;
            ++count[j];
            bool ok = true;
            for (auto y : out[x]) nd[y] &= ~bit(nxt(j));
            for (auto z : in[x]) nd[z] &= ~bit(prv(j));
            for (auto y : classes[cls_of[x]]) {
                if (y == x) continue;
                nd[y] &= pos_in[y] > pos_in[x] ? ~low_mask(j) : low_mask(j + 1);
            }
            if (count[j] == q) {
                for (std::size_t y = 0; y < n; ++y) {
                    if (!color[y]) nd[y] &= ~bit(j);
                }
            }
            for (std::size_t y = 0; y < n && ok; ++y) {
                if (!color[y] && nd[y] == 0) ok = false;
            }
            if (ok && search(nd, placed + 1)) return true;
            color[x] = 0;
            --count[j];
        }
        return false;
    };
    if (!search(dom, 0)) return std::nullopt;
    return color;
}

std::optional<Coloring> special_equitable_coloring(const LabeledDigraph& h, std::uint32_t k) {
    if (k != 2) return special_equitable_coloring_backtracking(h, k);
    if (h.n % 2 != 0) throw DomainError("vertex count " + std::to_string(h.n) + " not divisible by 2");
    const std::size_t n = h.n;
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (const auto& [a, b] : h.arcs) parent[find(a)] = find(b);
    std::vector<std::size_t> roots;
    std::vector<std::size_t> size(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
        if (size[find(x)]++ == 0) roots.push_back(find(x));
    }
    // reach[c][s]: sum s reachable with the first c components
    const std::size_t half = n / 2;
    std::vector<std::vector<bool>> reach(roots.size() + 1, std::vector<bool>(half + 1, false));
    reach[0][0] = true;
    for (std::size_t c = 0; c < roots.size(); ++c) {
        std::size_t w = size[roots[c]];
        for (std::size_t s = 0; s <= half; ++s) {
            reach[c + 1][s] = reach[c][s] || (s >= w && reach[c][s - w]);
        }
    }
    if (!reach[roots.size()][half]) return std::nullopt;
    std::vector<bool> chosen(n, false);
    std::size_t s = half;
    for (std::size_t c = roots.size(); c-- > 0;) {
        if (reach[c][s]) continue;
        chosen[roots[c]] = true;
        s -= size[roots[c]];
    }
    Coloring color(n);
    for (std::size_t x = 0; x < n; ++x) color[x] = chosen[find(x)] ? 1 : 2;
    return color;
}

LabeledDigraph gadget_from_hypergraph(std::uint32_t ground, const std::vector<Hyperedge>& edges, std::uint32_t k) {
    if (k < 3) throw DomainError("gadgets are defined for k >= 3");
    for (const auto& e : edges) {
        if (e[0] >= ground || e[1] >= ground || e[2] >= ground) throw DomainError("hyperedge element out of range");
        if (e[0] == e[1] || e[0] == e[2] || e[1] == e[2]) throw DomainError("hyperedge must have three distinct elements");
    }
    const std::uint32_t F = static_cast<std::uint32_t>(edges.size());
    const std::uint32_t a = 3 * F + ground;

    LabeledDigraph h;
    auto block = [&](const std::string& stem, std::uint32_t count) {
        std::vector<std::uint32_t> ids;
        for (std::uint32_t i = 1; i <= count; ++i) {
            ids.push_back(static_cast<std::uint32_t>(h.n++));
            h.name.push_back(stem + std::to_string(i));
            h.label.push_back(k);
        }
        return ids;
    };
    auto both = [&](const std::vector<std::uint32_t>& A, const std::vector<std::uint32_t>& B) {
        for (auto x : A) {
            for (auto y : B) {
                h.add_arc(x, y);
                h.add_arc(y, x);
            }
        }
    };

    auto A = block("s", a + F);
    auto B = block("b", a - F);
    auto X = block("x", ground);
    std::vector<std::array<std::uint32_t, 3>> copies;
    for (std::uint32_t e = 0; e < F; ++e) {
        std::array<std::uint32_t, 3> c;
        for (int t = 0; t < 3; ++t) {
            c[t] = static_cast<std::uint32_t>(h.n++);
            h.name.push_back("f" + std::to_string(e + 1) + std::string(t, '\''));
            h.label.push_back(k);
        }
        copies.push_back(c);
        const auto& ed = edges[e];
        std::array<std::uint32_t, 6> cyc{X[ed[0]], c[0], X[ed[1]], c[1], X[ed[2]], c[2]};
        for (int t = 0; t < 6; ++t) h.add_arc(cyc[t], cyc[(t + 1) % 6]);
    }

    if (k == 3) {
        for (std::size_t i = 1; i < A.size(); ++i) h.add_arc(A[0], A[i]);
        for (auto x : X) h.add_arc(A[0], x);
    } else {
        for (auto x : A) {
            for (auto y : A) {
                if (x != y) h.add_arc(x, y);
            }
        }
        both(A, X);
        auto C4 = block("c4_", a);
        if (k == 4) {
            for (auto y : C4) h.add_arc(A[0], y);
        } else {
            auto C5 = block("c5_", a);
            std::vector<std::uint32_t> D;
            for (std::uint32_t j = 5; j < k; ++j) {
                auto Dj = block("d" + std::to_string(j) + "_", a);
                D.insert(D.end(), Dj.begin(), Dj.end());
            }
            both(A, D);
            both(D, X);
            both(D, B);
            both({A[0]}, C4);
            if (A.size() > 1) both({A[1]}, C5);
        }
    }
    h.finalize();
    return h;
}

bool hypergraph_two_colorable(std::uint32_t ground, const std::vector<Hyperedge>& edges) {
    if (ground > 24) throw SizeLimitError("ground set too large for exhaustive two-coloring", ground, 24);
    for (std::uint64_t mask = 0; mask < (1ULL << ground); ++mask) {
        bool ok = std::all_of(edges.begin(), edges.end(), [&](const Hyperedge& e) {
            int ones = ((mask >> e[0]) & 1) + ((mask >> e[1]) & 1) + ((mask >> e[2]) & 1);
            return ones != 0 && ones != 3;
        });
        if (ok) return true;
    }
    return false;
}

std::string to_dot(const LabeledDigraph& h, const std::string& graph_name) {
    std::ostringstream os;
    os << "digraph " << graph_name << " {\n";
    auto name = [&](std::size_t x) { return x < h.name.size() ? h.name[x] : std::to_string(x); };
    for (std::size_t x = 0; x < h.n; ++x) {
        os << "  \"" << name(x) << "\" [label=\"" << name(x) << "\\nd=" << h.label[x] << "\"];\n";
    }
    for (const auto& [a, b] : h.arcs) os << "  \"" << name(a) << "\" -> \"" << name(b) << "\";\n";
    os << "}\n";
    return os.str();
}

std::string to_dot(const PatrollingGame& g, const std::string& graph_name) {
    std::ostringstream os;
    os << "digraph " << graph_name << " {\n";
    for (std::size_t u = 0; u < g.nodes; ++u) {
        os << "  u" << u;
        if (g.is_target(static_cast<NodeId>(u))) os << " [label=\"u" << u << "\\nd=" << g.attack_length(static_cast<NodeId>(u)) << "\"]";
        os << ";\n";
    }
    auto adj = g.adjacency();
    for (std::size_t u = 0; u < g.nodes; ++u) {
        for (std::size_t v = 0; v < g.nodes; ++v) {
            if (adj[u][v]) os << "  u" << u << " -> u" << v << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace patrol
