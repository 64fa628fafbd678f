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

#include "patrol/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace patrol::io {

namespace {

const json& field(const json& j, const char* name) {
    if (!j.is_object()) throw ValidationError(std::string("expected an object holding '") + name + "'");
    auto it = j.find(name);
    if (it == j.end()) throw ValidationError(std::string("missing field '") + name + "'");
    return *it;
}

std::uint64_t as_u64(const json& j, const std::string& what) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer()) {
        auto v = j.get<std::int64_t>();
        if (v < 0) throw ValidationError(what + " must be non-negative");
        return static_cast<std::uint64_t>(v);
    }
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
            throw ValidationError(what + " is not a non-negative integer: '" + s + "'");
        }
        BigInt v(s);
        if (v > BigInt(std::numeric_limits<std::uint64_t>::max())) throw ValidationError(what + " exceeds 64 bits");
        return v.convert_to<std::uint64_t>();
    }
    throw ValidationError(what + " must be an integer");
}

double as_prob(const json& j, const std::string& what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
    throw ValidationError(what + " must be a number");
}

NodeId as_node(const json& j, const std::string& what) {
    std::uint64_t v = as_u64(j, what);
    if (v > std::numeric_limits<NodeId>::max()) throw ValidationError(what + " out of range");
    return static_cast<NodeId>(v);
}

}  // namespace

json to_json(const PatrollingGame& g) {
    json j;
    j["nodes"] = g.nodes;
    j["targets"] = g.targets;
    j["init"] = g.init;
    j["fully_connected"] = g.fully_connected;
    json edges = json::array();
    for (const auto& [a, b] : g.edges) edges.push_back({a, b});
    j["edges"] = edges;
    json d = json::object();
    for (const auto& [u, k] : g.attack_len) d[std::to_string(u)] = k;
    j["attack_len"] = d;
    return j;
}

PatrollingGame game_from_json(const json& j) {
    PatrollingGame g;
    g.nodes = as_u64(field(j, "nodes"), "nodes");
    const json& t = field(j, "targets");
    if (!t.is_array()) throw ValidationError("'targets' must be an array");
    for (const auto& x : t) g.targets.push_back(as_node(x, "target"));
    g.init = as_node(field(j, "init"), "init");
    if (j.contains("fully_connected")) {
        if (!j["fully_connected"].is_boolean()) throw ValidationError("'fully_connected' must be a boolean");
        g.fully_connected = j["fully_connected"].get<bool>();
    }
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) throw ValidationError("'edges' must be an array");
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2) throw ValidationError("every edge must be a pair [from, to]");
            g.edges.emplace_back(as_node(e[0], "edge endpoint"), as_node(e[1], "edge endpoint"));
        }
    }
    const json& d = field(j, "attack_len");
    if (!d.is_object()) throw ValidationError("'attack_len' must be an object");
    for (const auto& [key, val] : d.items()) {
        g.attack_len[as_node(json(key), "attack_len key")] = as_u64(val, "attack length of node " + key);
    }
    return g;
}

json to_json(const Signature& s) {
    json j = json::object();
    for (const auto& [k, n] : s.counts()) j[std::to_string(k)] = std::to_string(n);
    return j;
}

Signature signature_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("signature must be an object {\"<k>\": \"<count>\"}");
    Signature s;
    for (const auto& [key, val] : j.items()) {
        std::uint64_t k = as_u64(json(key), "attack length");
        if (k == 0) throw ValidationError("attack length must be positive");
        std::uint64_t n = as_u64(val, "count of attack length " + key);
        if (n == 0) throw ValidationError("count of attack length " + key + " must be positive");
        s.add(k, n);
    }
    if (s.empty()) throw ValidationError("signature is empty");
    return s;
}

json to_json(const StrategyExpr& e) {
    switch (e.kind()) {
    case StrategyExpr::Kind::Circle:
        return {{"type", "circle"}, {"start", e.range().start}, {"n", e.range().len}, {"m", e.m()}, {"l", e.l()}};
    case StrategyExpr::Kind::Seq: {
        // flatten right-nested sequences into one parts list
        json parts = json::array();
        parts.push_back(to_json(e.left()));
        parts.push_back(to_json(e.right()));
        return {{"type", "seq"}, {"parts", parts}};
    }
    case StrategyExpr::Kind::Mix:
        return {{"type", "mix"}, {"var", e.var()}, {"left", to_json(e.left())}, {"right", to_json(e.right())}};
    }
    return {};
}

StrategyExpr expr_from_json(const json& j) {
    const std::string type = field(j, "type").is_string() ? j["type"].get<std::string>() : "";
    if (type == "circle") {
        NodeRange r{as_u64(field(j, "start"), "circle start"), as_u64(field(j, "n"), "circle n")};
        auto e = StrategyExpr::circle(r, as_u64(field(j, "m"), "circle m"), as_u64(field(j, "l"), "circle l"));
        validate_expr(e);
        return e;
    }
    if (type == "seq") {
        const json& parts = field(j, "parts");
        if (!parts.is_array() || parts.size() < 2) throw ValidationError("'parts' of a seq needs at least two entries");
        StrategyExpr acc = expr_from_json(parts.back());
        for (std::size_t i = parts.size() - 1; i-- > 0;) acc = StrategyExpr::seq(expr_from_json(parts[i]), acc);
        return acc;
    }
    if (type == "mix") {
        const json& v = field(j, "var");
        if (!v.is_string() || v.get<std::string>().empty()) throw ValidationError("'var' of a mix must be a name");
        return StrategyExpr::mix(v.get<std::string>(), expr_from_json(field(j, "left")),
                                 expr_from_json(field(j, "right")));
    }
    throw ValidationError("unknown strategy expression type '" + type + "'");
}

json to_json(const ValueExpr& e) {
    switch (e.op()) {
    case ValueExpr::Op::Const:
        return {{"op", "const"}, {"value", to_string(e.constant_value())}};
    case ValueExpr::Op::Var:
        return {{"op", "var"}, {"name", e.name()}};
    case ValueExpr::Op::Mul: {
        json args = json::array();
        for (const auto& a : e.args()) args.push_back(to_json(a));
        return {{"op", "mul"}, {"args", args}};
    }
    case ValueExpr::Op::Pow:
        return {{"op", "pow"}, {"base", to_json(e.args().front())}, {"exp", std::to_string(e.exponent())}};
    case ValueExpr::Op::OneMinus:
        return {{"op", "one_minus"}, {"arg", to_json(e.args().front())}};
    }
    return {};
}

ValueExpr value_expr_from_json(const json& j) {
    const std::string op = field(j, "op").is_string() ? j["op"].get<std::string>() : "";
    if (op == "const") {
        const json& v = field(j, "value");
        if (v.is_string()) return ValueExpr::constant(parse_rational(v.get<std::string>()));
        if (v.is_number_integer()) return ValueExpr::constant(Rational(v.get<std::int64_t>()));
        throw ValidationError("constant value must be a rational string");
    }
    if (op == "var") {
        const json& n = field(j, "name");
        if (!n.is_string()) throw ValidationError("variable name must be a string");
        return ValueExpr::var(n.get<std::string>());
    }
    if (op == "mul") {
        const json& a = field(j, "args");
        if (!a.is_array()) throw ValidationError("'args' must be an array");
        std::vector<ValueExpr> args;
        for (const auto& x : a) args.push_back(value_expr_from_json(x));
        return ValueExpr::mul(std::move(args));
    }
    if (op == "pow") {
        std::uint64_t k = as_u64(field(j, "exp"), "exponent");
        if (k == 0) throw ValidationError("exponent must be positive");
        return ValueExpr::pow(value_expr_from_json(field(j, "base")), k);
    }
    if (op == "one_minus") return ValueExpr::one_minus(value_expr_from_json(field(j, "arg")));
    throw ValidationError("unknown value expression op '" + op + "'");
}

json to_json(const Valuation& v) {
    json j = json::object();
    for (const auto& [name, x] : v) j[name] = x;
    return j;
}

Valuation valuation_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("valuation must be an object of name: number");
    Valuation v;
    for (const auto& [name, x] : j.items()) {
        double p = as_prob(x, "value of '" + name + "'");
        if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("value of '" + name + "' outside [0,1]");
        v[name] = p;
    }
    return v;
}

json to_json(const SynthesisResult& r) {
    json j;
    j["expr"] = to_json(r.expr);
    j["value"] = to_json(r.value);
    j["variables"] = r.variables;
    json eqs = json::array();
    for (const auto& e : r.equations) eqs.push_back({{"lhs", to_json(e.lhs)}, {"rhs", to_json(e.rhs)}});
    j["equations"] = eqs;
    json b = json::object();
    for (const auto& [name, q] : r.bindings) b[name] = to_string(q);
    j["bindings"] = b;
    return j;
}

SynthesisResult synthesis_from_json(const json& j) {
    SynthesisResult r;
    r.expr = expr_from_json(field(j, "expr"));
    r.value = value_expr_from_json(field(j, "value"));
    const json& vars = field(j, "variables");
    if (!vars.is_array()) throw ValidationError("'variables' must be an array");
    for (const auto& v : vars) {
        if (!v.is_string()) throw ValidationError("variable names must be strings");
        r.variables.push_back(v.get<std::string>());
    }
    const json& eqs = field(j, "equations");
    if (!eqs.is_array()) throw ValidationError("'equations' must be an array");
    for (const auto& e : eqs) {
        r.equations.push_back({value_expr_from_json(field(e, "lhs")), value_expr_from_json(field(e, "rhs"))});
    }
    if (j.contains("bindings")) {
        for (const auto& [name, q] : j["bindings"].items()) {
            if (!q.is_string()) throw ValidationError("binding of '" + name + "' must be a rational string");
            r.bindings[name] = parse_rational(q.get<std::string>());
        }
    }
    return r;
}

json to_json(const FiniteMemoryStrategy& f) {
    json j;
    j["memory"] = f.memory;
    j["init"] = f.init;
    j["next"] = f.next;
    json emit = json::array();
    for (const auto& row : f.emit) {
        json r = json::array();
        for (const auto& d : row) {
            json o = json::object();
            for (const auto& [w, p] : d) o[std::to_string(w)] = p;
            r.push_back(o);
        }
        emit.push_back(r);
    }
    j["emit"] = emit;
    return j;
}

FiniteMemoryStrategy finite_memory_from_json(const json& j) {
    FiniteMemoryStrategy f;
    f.memory = as_u64(field(j, "memory"), "memory");
    f.init = as_u64(field(j, "init"), "init");
    const json& next = field(j, "next");
    const json& emit = field(j, "emit");
    if (!next.is_array() || !emit.is_array()) throw ValidationError("'next' and 'emit' must be arrays");
    for (const auto& row : next) {
        if (!row.is_array()) throw ValidationError("rows of 'next' must be arrays");
        std::vector<std::uint64_t> r;
        for (const auto& x : row) r.push_back(as_u64(x, "memory update"));
        f.next.push_back(std::move(r));
    }
    for (const auto& row : emit) {
        if (!row.is_array()) throw ValidationError("rows of 'emit' must be arrays");
        std::vector<Distribution> r;
        for (const auto& o : row) {
            if (!o.is_object()) throw ValidationError("emissions must be objects {node: probability}");
            Distribution d;
            for (const auto& [key, p] : o.items()) d.emplace_back(as_node(json(key), "emission node"), as_prob(p, "emission"));
            std::sort(d.begin(), d.end());
            r.push_back(std::move(d));
        }
        f.emit.push_back(std::move(r));
    }
    return f;
}

json to_json(const ModularStrategy& m) {
    json dists = json::array();
    for (const auto& d : m.dists) {
        json row = json::array();
        for (const auto& r : d) row.push_back({{"start", r.range.start}, {"len", r.range.len}, {"prob", r.prob}});
        dists.push_back(row);
    }
    return {{"period", m.period}, {"dists", dists}};
}

json to_json(const Characteristic& c) {
    json step = json::object();
    for (const auto& [v, p] : c.step) step[std::to_string(v)] = to_string(p);
    json levels = json::array();
    for (const auto& l : c.levels) {
        json o = json::object();
        for (const auto& [u, p] : l) o[std::to_string(u)] = to_string(p);
        levels.push_back(o);
    }
    return {{"root", c.root}, {"step", step}, {"levels", levels}};
}

Hypergraph hypergraph_from_json(const json& j) {
    Hypergraph h;
    std::map<std::string, std::uint32_t> names;
    const json& ground = field(j, "ground");
    if (ground.is_array()) {
        for (const auto& x : ground) {
            std::string key = x.is_string() ? x.get<std::string>() : x.dump();
            if (!names.emplace(key, h.ground).second) throw ValidationError("ground element '" + key + "' listed twice");
            ++h.ground;
        }
    } else {
        h.ground = static_cast<std::uint32_t>(as_u64(ground, "ground size"));
    }
    const json& edges = field(j, "edges");
    if (!edges.is_array()) throw ValidationError("'edges' must be an array");
    for (const auto& e : edges) {
        if (!e.is_array() || e.size() != 3) throw ValidationError("every hyperedge must have exactly three elements");
        Hyperedge he;
        for (int t = 0; t < 3; ++t) {
            if (!names.empty()) {
                std::string key = e[t].is_string() ? e[t].get<std::string>() : e[t].dump();
                auto it = names.find(key);
                if (it == names.end()) throw ValidationError("hyperedge element '" + key + "' not in the ground set");
                he[t] = it->second;
            } else {
                he[t] = static_cast<std::uint32_t>(as_u64(e[t], "hyperedge element"));
            }
        }
        h.edges.push_back(he);
    }
    return h;
}

json rounded(double v) { return round_significant(v, 10); }

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError(path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ValidationError(path + ": cannot write file");
    out << text;
}

}  // namespace patrol::io
