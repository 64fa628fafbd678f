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

#include "patrol/polysolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <Eigen/Dense>

namespace patrol {

namespace {

constexpr std::uint64_t kLogDomainExponent = 1000;

// Flattened expression over indexed variables.
class Compiled {
public:
    Compiled(const ValueExpr& e, const std::map<std::string, int>& index) { root_ = add(e, index); }

    double eval(const std::vector<double>& x) const { return eval(root_, x); }

private:
    enum class K { Const, Var, Mul, Pow, OneMinus, Coverage };
    struct N {
        K k;
        double c = 0.0;
        int var = -1;
        std::uint64_t exp = 0;
        std::vector<int> args;
        std::vector<std::uint64_t> exps;  // Coverage: one exponent per arg
    };

    // 1 - prod_j (1 - y_j)^{k_j}, with constant factors folded into c as a log.
    bool add_coverage(const ValueExpr& a, const std::map<std::string, int>& index, N& n) {
        std::vector<const ValueExpr*> factors;
        if (a.op() == ValueExpr::Op::Mul) {
            for (const auto& f : a.args()) factors.push_back(&f);
        } else {
            factors.push_back(&a);
        }
        double log_const = 0.0;
        std::vector<std::pair<const ValueExpr*, std::uint64_t>> terms;
        for (const ValueExpr* f : factors) {
            if (f->op() == ValueExpr::Op::OneMinus) {
                terms.emplace_back(&f->args().front(), 1);
            } else if (f->op() == ValueExpr::Op::Pow && f->args().front().op() == ValueExpr::Op::OneMinus) {
                terms.emplace_back(&f->args().front().args().front(), f->exponent());
            } else if (f->is_constant() && f->constant_value() > 0) {
                log_const += std::log(to_double(f->constant_value()));
            } else {
                return false;
            }
        }
        n.k = K::Coverage;
        n.c = log_const;
        for (const auto& [y, k] : terms) {
            n.args.push_back(add(*y, index));
            n.exps.push_back(k);
        }
        return true;
    }

    int add(const ValueExpr& e, const std::map<std::string, int>& index) {
        N n;
        n.k = K::Const;
        switch (e.op()) {
        case ValueExpr::Op::Const:
            n.c = to_double(e.constant_value());
            break;
        case ValueExpr::Op::Var: {
            auto it = index.find(e.name());
            if (it == index.end()) throw UnboundVariableError(e.name());
            n.k = K::Var;
            n.var = it->second;
            break;
        }
        case ValueExpr::Op::Mul:
            n.k = K::Mul;
            for (const auto& a : e.args()) n.args.push_back(add(a, index));
            break;
        case ValueExpr::Op::Pow:
            n.k = K::Pow;
            n.exp = e.exponent();
            n.args.push_back(add(e.args().front(), index));
            break;
        case ValueExpr::Op::OneMinus: {
            const ValueExpr& a = e.args().front();
            if (!add_coverage(a, index, n)) {
                n.k = K::OneMinus;
                n.args.push_back(add(a, index));
            }
            break;
        }
        }
        nodes_.push_back(std::move(n));
        return static_cast<int>(nodes_.size()) - 1;
    }

    double eval(int i, const std::vector<double>& x) const {
        const N& n = nodes_[i];
        switch (n.k) {
        case K::Const:
            return n.c;
        case K::Var:
            return x[n.var];
        case K::Mul: {
            double r = 1.0;
            for (int a : n.args) r *= eval(a, x);
            return r;
        }
        case K::Pow: {
            double b = eval(n.args.front(), x);
            if (n.exp > kLogDomainExponent) {
                if (b <= 0.0) return 0.0;
                return std::exp(static_cast<double>(n.exp) * std::log(b));
            }
            return std::pow(b, static_cast<double>(n.exp));
        }
        case K::OneMinus:
            return 1.0 - eval(n.args.front(), x);
        case K::Coverage: {
            double s = n.c;
            for (std::size_t j = 0; j < n.args.size(); ++j) {
                double y = eval(n.args[j], x);
                if (y >= 1.0) return 1.0;
                s += static_cast<double>(n.exps[j]) * std::log1p(-y);
            }
            return -std::expm1(s);
        }
        }
        return 0.0;
    }

    std::vector<N> nodes_;
    int root_ = 0;
};

struct Residuals {
    std::vector<Compiled> lhs;
    std::vector<Compiled> rhs;

    Eigen::VectorXd operator()(const std::vector<double>& x) const {
        Eigen::VectorXd r(lhs.size());
        for (std::size_t i = 0; i < lhs.size(); ++i) r[static_cast<Eigen::Index>(i)] = lhs[i].eval(x) - rhs[i].eval(x);
        return r;
    }
};

std::vector<int> first_primes(std::size_t count) {
    std::vector<int> p;
    for (int c = 2; p.size() < count; ++c) {
        bool prime = std::all_of(p.begin(), p.end(), [c](int q) { return c % q != 0; });
        if (prime) p.push_back(c);
    }
    return p;
}

double radical_inverse(std::uint64_t i, int base) {
    double inv = 1.0 / base, f = inv, r = 0.0;
    while (i > 0) {
        r += f * static_cast<double>(i % base);
        i /= base;
        f *= inv;
    }
    return r;
}

}  // namespace

double eval_value_expr(const ValueExpr& e, const Valuation& v) {
    std::map<std::string, int> index;
    std::vector<double> x;
    for (const auto& [name, val] : v) {
        index[name] = static_cast<int>(x.size());
        x.push_back(val);
    }
    return Compiled(e, index).eval(x);
}

EquationSystem system_of(const SynthesisResult& r) {
    EquationSystem sys{r.variables, r.equations, {}};
    for (const auto& name : r.variables) {
        auto it = r.guess.find(name);
        sys.guess.push_back(it == r.guess.end() ? 0.5 : it->second);
    }
    return sys;
}

double max_residual(const EquationSystem& sys, const Valuation& v) {
    double m = 0.0;
    for (const auto& eq : sys.equations) {
        m = std::max(m, std::fabs(eval_value_expr(eq.lhs, v) - eval_value_expr(eq.rhs, v)));
    }
    return m;
}

SolveResult solve_equations(const EquationSystem& sys, const SolveOptions& opts) {
    const std::size_t k = sys.variables.size();
    if (sys.equations.size() != k) {
        throw DomainError("equation system is not square (" + std::to_string(sys.equations.size()) +
                          " equations, " + std::to_string(k) + " variables)");
    }
    SolveResult out;
    if (k == 0) return out;

    std::map<std::string, int> index;
    for (std::size_t i = 0; i < k; ++i) index[sys.variables[i]] = static_cast<int>(i);
    Residuals F;
    for (const auto& eq : sys.equations) {
        F.lhs.emplace_back(eq.lhs, index);
        F.rhs.emplace_back(eq.rhs, index);
    }

    const auto primes = first_primes(k);
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_x;
    int total_iterations = 0;

    const std::vector<double>& start = opts.start.empty() ? sys.guess : opts.start;
    if (!start.empty() && start.size() != k) throw DomainError("start point has the wrong dimension");
    for (int attempt = 0; attempt <= opts.max_restarts + (start.empty() ? 0 : 1); ++attempt) {
        std::vector<double> x(k, 0.5);
        int halton = attempt;
        if (!start.empty()) {
            if (attempt == 0) x = start;
            halton = attempt - 1;
        }
        if (halton > 0) {
            for (std::size_t i = 0; i < k; ++i) {
                x[i] = 0.01 + 0.98 * radical_inverse(static_cast<std::uint64_t>(halton), primes[i]);
            }
        }

        Eigen::VectorXd r = F(x);
        for (int it = 0; it < opts.max_iterations; ++it) {
            double res = r.cwiseAbs().maxCoeff();
            if (std::isfinite(res) && res < best) {
                best = res;
                best_x = x;
            }
            if (res <= opts.tolerance) break;
            ++total_iterations;

            Eigen::MatrixXd J(k, k);
            for (std::size_t j = 0; j < k; ++j) {
                double h = opts.fd_step;
                std::vector<double> xp = x, xm = x;
                double lo = x[j] - h, hi = x[j] + h;
                if (lo < 0.0) lo = x[j];
                if (hi > 1.0) hi = x[j];
                xp[j] = hi;
                xm[j] = lo;
                J.col(static_cast<Eigen::Index>(j)) = (F(xp) - F(xm)) / (hi - lo);
            }
            Eigen::VectorXd dx = J.partialPivLu().solve(-r);
            if (!dx.allFinite()) break;

            double norm0 = r.norm();
            double lambda = 1.0;
            bool improved = false;
            for (int h = 0; h < 60; ++h, lambda *= 0.5) {
                std::vector<double> xn(k);
                for (std::size_t i = 0; i < k; ++i) {
                    xn[i] = std::clamp(x[i] + lambda * dx[static_cast<Eigen::Index>(i)], 0.0, 1.0);
                }
                Eigen::VectorXd rn = F(xn);
                if (rn.allFinite() && rn.norm() < norm0) {
                    x = std::move(xn);
                    r = std::move(rn);
                    improved = true;
                    break;
                }
            }
            if (!improved) break;
        }
        double res = r.cwiseAbs().maxCoeff();
        if (std::isfinite(res) && res < best) {
            best = res;
            best_x = x;
        }
        if (best <= opts.tolerance) {
            out.restarts = attempt;
            break;
        }
    }
    out.iterations = total_iterations;
    if (!(best <= opts.tolerance)) {
        throw ConvergenceError("no solution within tolerance after " + std::to_string(opts.max_restarts) +
                                   " restarts (best residual " + std::to_string(best) + ")",
                               best);
    }
    out.residual = best;
    for (std::size_t i = 0; i < k; ++i) {
        out.valuation[sys.variables[i]] = best_x[i];
        if (best_x[i] <= 0.0 || best_x[i] >= 1.0) {
            out.warnings.push_back("variable " + sys.variables[i] + " lies on the boundary of [0,1]");
        }
    }
    return out;
}

}  // namespace patrol
