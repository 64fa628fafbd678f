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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "patrol/defend.hpp"
#include "patrol/envcheck.hpp"
#include "patrol/epsopt.hpp"
#include "patrol/errors.hpp"
#include "patrol/evaluator.hpp"
#include "patrol/game.hpp"
#include "patrol/io.hpp"
#include "patrol/polysolve.hpp"
#include "patrol/strategy_expr.hpp"

namespace patrol::cli {

namespace {

using io::json;

std::string decimal(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string render(const json& j) { return j.dump(2) + "\n"; }

/// Runs a parser over a file, prefixing any failure with the path.
template <class T>
T load(const std::string& path, const std::function<T(const json&)>& parse) {
    json j = io::read_json_file(path);
    try {
        return parse(j);
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    } catch (const DomainError& e) {
        throw ValidationError(path + ": " + e.what());
    } catch (const json::exception& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

/// {"k": "n", ...} from a file, or inline as JSON or as {k:n, ...}.
Signature load_signature(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{' && !std::filesystem::exists(arg)) {
        json j;
        try {
            j = json::parse(arg);
        } catch (const json::exception&) {
            std::string body;
            for (char c : arg) {
                if (c != '{' && c != '}' && c != '"' && c != ' ') body += c;
            }
            j = json::object();
            std::stringstream ss(body);
            std::string item;
            while (std::getline(ss, item, ',')) {
                auto colon = item.find(':');
                if (colon == std::string::npos) throw ValidationError("signature entry '" + item + "' is not k:count");
                j[item.substr(0, colon)] = item.substr(colon + 1);
            }
        }
        try {
            return io::signature_from_json(j);
        } catch (const json::exception& e) {
            throw ValidationError(std::string("signature: ") + e.what());
        }
    }
    return load<Signature>(arg, io::signature_from_json);
}

PatrollingGame load_game(const std::string& path) {
    return load<PatrollingGame>(path, [&](const json& j) {
        PatrollingGame g = io::game_from_json(j);
        require_valid(g);
        return g;
    });
}

/// A plain valuation, or any object carrying one under "valuation".
Valuation load_valuation(const std::string& path) {
    return load<Valuation>(path, [](const json& j) {
        if (j.is_object() && j.contains("valuation") && j["valuation"].is_object()) {
            return io::valuation_from_json(j["valuation"]);
        }
        return io::valuation_from_json(j);
    });
}

struct LoadedStrategy {
    bool finite_memory = false;
    FiniteMemoryStrategy fm;
    StrategyExpr expr = StrategyExpr::circle({1, 1}, 1, 1);
    Valuation valuation;
};

/// A strategy expression, a synthesis result, or a finite-memory strategy.
LoadedStrategy load_strategy(const std::string& path, const Valuation& given) {
    return load<LoadedStrategy>(path, [&](const json& j) {
        LoadedStrategy s;
        s.valuation = given;
        if (j.is_object() && j.contains("memory")) {
            s.finite_memory = true;
            s.fm = io::finite_memory_from_json(j);
        } else if (j.is_object() && j.contains("expr")) {
            SynthesisResult r = io::synthesis_from_json(j);
            s.expr = r.expr;
            s.valuation = full_valuation(r, given);
        } else {
            s.expr = io::expr_from_json(j);
        }
        return s;
    });
}

void check_nodes(const ModularStrategy& m, const PatrollingGame& g) {
    if (m.max_node() > g.nodes) {
        throw ValidationError("strategy visits node index " + std::to_string(m.max_node()) + " but the game has " +
                              std::to_string(g.nodes) + " nodes");
    }
}

FiniteMemoryStrategy as_finite_memory(const LoadedStrategy& s, const PatrollingGame& g, std::uint64_t cap) {
    if (s.finite_memory) {
        validate_finite_memory(s.fm, g);
        return s.fm;
    }
    ModularStrategy m = expand_explicit(s.expr, s.valuation, cap);
    check_nodes(m, g);
    return to_finite_memory(m, g);
}

json state_json(const ReachState& s) { return {{"mem", s.mem}, {"node", s.node}}; }

void write_or_print(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
    } else {
        io::write_text_file(path, text);
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Synthesis and analysis of defender strategies for adversarial patrolling games", "patrol"};
    app.require_subcommand(1, 1);

    std::string signature, game, strategy, valuation, out_path, hypergraph, eps = "0.2";
    bool solve = false;
    bool color = false;
    std::uint64_t cap = 1'000'000;
    std::uint32_t k = 3;
    EpsLimits limits;
    std::function<void()> action;

    auto* bound = app.add_subcommand("bound", "Print the closed-form upper bound on the value of a signature");
    bound->add_option("--signature", signature, "Signature file or inline {k:count,...}")->required();
    bound->callback([&] {
        action = [&] {
            Rational b = upper_bound_value(load_signature(signature));
            if (b > 1) b = 1;
            out << to_string(b) << " (" << decimal(to_double(b)) << ")\n";
        };
    });

    auto* synth = app.add_subcommand("synth", "Synthesize a modular strategy for a fully connected environment");
    synth->add_option("--signature", signature, "Signature file or inline {k:count,...}")->required();
    synth->add_flag("--solve", solve, "Solve the equation system and report the numeric value");
    synth->add_option("--out", out_path, "Directory for synthesis.json and valuation.json");
    synth->callback([&] {
        action = [&] {
            SynthesisResult r = synthesize_from_signature(load_signature(signature));
            json syn = io::to_json(r);
            json doc = syn;
            json val;
            if (solve) {
                SolveResult sr;
                if (!r.equations.empty()) sr = solve_equations(system_of(r));
                Valuation full = full_valuation(r, sr.valuation);
                val = io::to_json(full);
                doc = json::object();
                doc["synthesis"] = syn;
                doc["valuation"] = val;
                doc["value"] = io::rounded(eval_value_expr(r.value, full));
                if (r.value.is_constant()) doc["value_exact"] = to_string(r.value.constant_value());
                doc["variables"] = r.variables.size();
                doc["residual"] = sr.residual;
                doc["iterations"] = sr.iterations;
                doc["restarts"] = sr.restarts;
                doc["warnings"] = sr.warnings;
            }
            if (!out_path.empty()) {
                std::filesystem::create_directories(out_path);
                io::write_text_file((std::filesystem::path(out_path) / "synthesis.json").string(), render(syn));
                if (solve) io::write_text_file((std::filesystem::path(out_path) / "valuation.json").string(), render(val));
            }
            out << render(doc);
        };
    });

    auto* eval = app.add_subcommand("eval", "Evaluate a strategy against the best-responding attacker");
    eval->add_option("--strategy", strategy, "Strategy expression, synthesis result or finite-memory strategy")
        ->required();
    eval->add_option("--game", game, "Game file")->required();
    eval->add_option("--valuation", valuation, "Valuation file for Mix variables");
    eval->add_option("--cap", cap, "Largest explicit period or node count")->capture_default_str();
    eval->callback([&] {
        action = [&] {
            PatrollingGame g = load_game(game);
            LoadedStrategy s = load_strategy(strategy, valuation.empty() ? Valuation{} : load_valuation(valuation));
            json doc;
            if (s.finite_memory) {
                validate_finite_memory(s.fm, g);
                FiniteMemoryValue v = value_finite_memory(s.fm, g);
                doc = {{"value", io::rounded(v.value)},
                       {"worst_phase_or_state", state_json(v.state)},
                       {"worst_target", v.target},
                       {"reachable_states", v.reachable_states}};
            } else {
                ModularStrategy m = expand_explicit(s.expr, s.valuation, cap);
                check_nodes(m, g);
                if (!g.fully_connected) to_finite_memory(m, g);  // edge check
                ModularValue v = value_modular(m, g);
                doc = {{"value", io::rounded(v.value)},
                       {"worst_phase_or_state", v.phase},
                       {"worst_target", v.target},
                       {"period", m.period}};
            }
            out << render(doc);
        };
    });

    auto* epsopt = app.add_subcommand("epsopt", "Synthesize an eps-optimal finite-memory strategy");
    epsopt->add_option("--game", game, "Game file")->required();
    epsopt->add_option("--eps", eps, "Additive error in (0, 1), decimal or p/q")->capture_default_str();
    epsopt->add_option("--max-chars", limits.max_chars, "Characteristic enumeration cap")->capture_default_str();
    epsopt->add_option("--max-grid", limits.max_grid, "Largest grid denominator")->capture_default_str();
    epsopt->add_option("--max-nodes", limits.max_nodes, "Largest node count")->capture_default_str();
    epsopt->add_option("--max-attack-len", limits.max_attack_len, "Largest attack length")->capture_default_str();
    epsopt->add_option("--out", out_path, "File for the finite-memory strategy");
    epsopt->callback([&] {
        action = [&] {
            PatrollingGame g = load_game(game);
            EpsResult r = synthesize_eps_optimal(g, parse_rational(eps), limits);
            FiniteMemoryValue v = value_finite_memory(r.strategy, g);
            json strat = io::to_json(r.strategy);
            json doc = {{"value", io::rounded(v.value)},
                        {"value_exact", to_string(r.value)},
                        {"chars_enumerated", r.chars_enumerated},
                        {"grid", r.grid},
                        {"memory", r.strategy.memory}};
            if (out_path.empty()) {
                doc["strategy"] = strat;
            } else {
                io::write_text_file(out_path, render(strat));
            }
            out << render(doc);
        };
    });

    auto* connect = app.add_subcommand("connect", "Test whether an environment is sufficiently connected");
    connect->add_option("--game", game, "Game file")->required();
    connect->callback([&] {
        action = [&] {
            PatrollingGame g = load_game(game);
            EmbeddingResult r = is_sufficiently_connected(g);
            json witness = nullptr;
            if (r.connected) {
                witness = json::object();
                for (std::size_t x = 0; x < r.witness.size(); ++x) witness[r.pattern.name[x]] = r.witness[x];
            }
            out << render({{"connected", r.connected}, {"witness", witness}, {"search_nodes", r.search_nodes}});
        };
    });

    auto* mls = app.add_subcommand("mls", "Emit the characteristic digraph of a signature in DOT");
    mls->add_option("--signature", signature, "Signature file or inline {k:count,...}")->required();
    mls->add_option("--out", out_path, "DOT file (default: standard output)");
    mls->callback([&] {
        action = [&] {
            LabeledDigraph h = build_characteristic_digraph(load_signature(signature));
            write_or_print(out_path, to_dot(h, "M_S"), out);
        };
    });

    auto* gadget = app.add_subcommand("gadget", "Build the coloring gadget of a 3-uniform hypergraph");
    gadget->add_option("--hypergraph", hypergraph, "Hypergraph file")->required();
    gadget->add_option("--k", k, "Number of colors (>= 3)")->capture_default_str();
    gadget->add_option("--out", out_path, "DOT file for the gadget");
    gadget->add_flag("--color", color, "Also search for a special equitable coloring");
    gadget->callback([&] {
        action = [&] {
            io::Hypergraph hg = load<io::Hypergraph>(hypergraph, io::hypergraph_from_json);
            LabeledDigraph h = gadget_from_hypergraph(hg.ground, hg.edges, k);
            json doc = {{"k", k}, {"vertices", h.n}, {"arcs", h.arcs.size()}};
            if (hg.ground <= 24) doc["two_colorable"] = hypergraph_two_colorable(hg.ground, hg.edges);
            if (color) {
                auto c = special_equitable_coloring(h, k);
                doc["colorable"] = c.has_value();
                doc["coloring"] = c ? json(*c) : json(nullptr);
            }
            if (!out_path.empty()) io::write_text_file(out_path, to_dot(h, "gadget"));
            out << render(doc);
        };
    });

    auto* oracle = app.add_subcommand("oracle", "Cross-check a small instance by explicit path enumeration");
    oracle->add_option("--strategy", strategy, "Strategy expression, synthesis result or finite-memory strategy")
        ->required();
    oracle->add_option("--game", game, "Game file")->required();
    oracle->add_option("--valuation", valuation, "Valuation file for Mix variables");
    oracle->callback([&] {
        action = [&] {
            PatrollingGame g = load_game(game);
            LoadedStrategy s = load_strategy(strategy, valuation.empty() ? Valuation{} : load_valuation(valuation));
            FiniteMemoryStrategy f = as_finite_memory(s, g, cap);
            FiniteMemoryValue a = oracle_value_by_path_enumeration(f, g);
            FiniteMemoryValue b = value_finite_memory(f, g);
            out << render({{"value", io::rounded(a.value)},
                           {"finite_memory_value", io::rounded(b.value)},
                           {"agree", std::abs(a.value - b.value) <= 1e-10},
                           {"worst_phase_or_state", state_json(a.state)},
                           {"worst_target", a.target}});
        };
    });

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    }

    try {
        action();
        return kOk;
    } catch (const SizeLimitError& e) {
        err << "error: " << e.what() << "\n";
        return kSizeLimit;
    } catch (const OverflowError& e) {
        err << "error: " << e.what() << "\n";
        return kSizeLimit;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << "\n";
        return kNoConvergence;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
}

}  // namespace patrol::cli
