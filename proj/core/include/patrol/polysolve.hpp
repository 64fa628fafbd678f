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

#ifndef PATROL_POLYSOLVE_HPP
#define PATROL_POLYSOLVE_HPP

#include <string>
#include <vector>

#include "patrol/defend.hpp"
#include "patrol/strategy_expr.hpp"
#include "patrol/value_expr.hpp"

namespace patrol {

/**
 * Double-precision value of e. Powers above 1000 go through the log domain;
 * 1 - (1 - x)^k is evaluated as -expm1(k log1p(-x)).
 */
double eval_value_expr(const ValueExpr& e, const Valuation& v);

struct EquationSystem {
    std::vector<std::string> variables;
    std::vector<Equation> equations;
    /// Optional first starting point, one entry per variable.
    std::vector<double> guess;
};

EquationSystem system_of(const SynthesisResult& r);

struct SolveOptions {
    double tolerance = 1e-12;
    double fd_step = 1e-7;
    int max_iterations = 200;
    int max_restarts = 50;
    /// Optional first starting point (otherwise the system's guess, or 0.5 everywhere).
    std::vector<double> start;
};

struct SolveResult {
    Valuation valuation;
    double residual = 0.0;
    int iterations = 0;
    int restarts = 0;
    std::vector<std::string> warnings;
};

/// max_i |lhs_i(x) - rhs_i(x)|
double max_residual(const EquationSystem& sys, const Valuation& v);

/**
 * Damped Newton with a central-difference Jacobian from (0.5, ..., 0.5),
 * then from Halton points in (0.01, 0.99)^k. Throws ConvergenceError when
 * no start reaches the tolerance.
 */
SolveResult solve_equations(const EquationSystem& sys, const SolveOptions& opts = {});

}  // namespace patrol

#endif  // PATROL_POLYSOLVE_HPP
