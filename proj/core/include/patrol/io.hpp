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

#ifndef PATROL_IO_HPP
#define PATROL_IO_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "patrol/defend.hpp"
#include "patrol/envcheck.hpp"
#include "patrol/epsopt.hpp"
#include "patrol/game.hpp"
#include "patrol/strategy_expr.hpp"
#include "patrol/value_expr.hpp"

namespace patrol::io {

using nlohmann::json;

// Every from_json_* throws ValidationError naming the first bad field.

json to_json(const PatrollingGame& g);
PatrollingGame game_from_json(const json& j);

/// {"<k>": "<count>"}; counts may also be given as JSON integers.
json to_json(const Signature& s);
Signature signature_from_json(const json& j);

json to_json(const StrategyExpr& e);
StrategyExpr expr_from_json(const json& j);

json to_json(const ValueExpr& e);
ValueExpr value_expr_from_json(const json& j);

json to_json(const Valuation& v);
Valuation valuation_from_json(const json& j);

json to_json(const SynthesisResult& r);
SynthesisResult synthesis_from_json(const json& j);

json to_json(const FiniteMemoryStrategy& f);
FiniteMemoryStrategy finite_memory_from_json(const json& j);

json to_json(const ModularStrategy& m);

json to_json(const Characteristic& c);

/// {"ground": n | [names...], "edges": [[a, b, c], ...]} with indices or names.
struct Hypergraph {
    std::uint32_t ground = 0;
    std::vector<Hyperedge> edges;
};
Hypergraph hypergraph_from_json(const json& j);

/// A number rounded to 10 significant digits.
json rounded(double v);

/// Reads and parses a JSON file; errors name the path.
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace patrol::io

#endif  // PATROL_IO_HPP
