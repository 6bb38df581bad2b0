// Copyright 2026 The invset Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "invset/lp.hpp"

#include <Highs.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace invset {

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal:
      return "Optimal";
    case LpStatus::Feasible:
      return "Feasible";
    case LpStatus::Infeasible:
      return "Infeasible";
    case LpStatus::Unbounded:
      return "Unbounded";
    case LpStatus::NumericalFailure:
      return "NumericalFailure";
  }
  return "Unknown";
}

LpProblem::LpProblem(int n, std::string label)
    : num_vars(n),
      A_eq(0, n),
      b_eq(0),
      A_ineq(0, n),
      b_ineq(0),
      lower(Eigen::VectorXd::Constant(n, -kInf)),
      name(std::move(label)) {}

void LpProblem::validate() const {
  auto fail = [this](const std::string& what) {
    throw std::invalid_argument("LpProblem '" + name + "': " + what);
  };
  if (num_vars < 0) fail("negative variable count");
  if (A_eq.cols() != num_vars || A_ineq.cols() != num_vars) fail("matrix column count != num_vars");
  if (A_eq.rows() != b_eq.size()) fail("equality rhs length mismatch");
  if (A_ineq.rows() != b_ineq.size()) fail("inequality rhs length mismatch");
  if (lower.size() != num_vars) fail("lower bound length mismatch");
  if (cost.size() != 0 && cost.size() != num_vars) fail("cost length mismatch");
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (std::isnan(lower[i]) || lower[i] == kInf) fail("lower bound must be finite or -inf");
  }
  if (!b_eq.allFinite() || !b_ineq.allFinite()) fail("non-finite right-hand side");
  if (cost.size() != 0 && !cost.allFinite()) fail("non-finite cost");
}

namespace {

// max(1, largest |coefficient|) per row.
Eigen::VectorXd row_scales(const SparseMatrix& A) {
  Eigen::VectorXd s = Eigen::VectorXd::Ones(A.rows());
  for (Eigen::Index r = 0; r < A.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(A, r); it; ++it) s[r] = std::max(s[r], std::abs(it.value()));
  }
  return s;
}

}  // namespace

Residuals residuals(const LpProblem& problem, const Eigen::VectorXd& x) {
  Residuals r;
  if (problem.A_eq.rows() > 0) {
    r.eq = ((problem.A_eq * x - problem.b_eq).array() / row_scales(problem.A_eq).array())
               .abs()
               .maxCoeff();
  }
  if (problem.A_ineq.rows() > 0) {
    r.ineq = std::max(
        0.0, ((problem.A_ineq * x - problem.b_ineq).array() / row_scales(problem.A_ineq).array())
                 .maxCoeff());
  }
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (problem.lower[i] > -kInf) r.bound = std::max(r.bound, problem.lower[i] - x[i]);
  }
  return r;
}

bool verify_solution(const LpProblem& problem, const Eigen::VectorXd& x,
                     const SolverConfig& config) {
  if (x.size() != problem.num_vars || !x.allFinite()) return false;
  const Residuals r = residuals(problem, x);
  return r.eq <= config.eq_tol && r.ineq <= config.ineq_tol && r.bound <= config.ineq_tol;
}

SparseMatrix RowBuilder::matrix() const {
  SparseMatrix m(rows_, num_vars_);
  m.setFromTriplets(triplets_.begin(), triplets_.end());
  return m;
}

Eigen::VectorXd RowBuilder::rhs() const {
  return Eigen::Map<const Eigen::VectorXd>(rhs_.data(), static_cast<Eigen::Index>(rhs_.size()));
}

namespace {

HighsLp to_highs(const LpProblem& p, bool with_cost) {
  HighsLp lp;
  const auto n = static_cast<HighsInt>(p.num_vars);
  const auto m_eq = static_cast<HighsInt>(p.A_eq.rows());
  const auto m_in = static_cast<HighsInt>(p.A_ineq.rows());
  lp.num_col_ = n;
  lp.num_row_ = m_eq + m_in;
  lp.col_cost_.assign(static_cast<size_t>(n), 0.0);
  if (with_cost && p.has_objective()) {
    for (HighsInt j = 0; j < n; ++j) lp.col_cost_[j] = p.cost[j];
  }
  lp.col_lower_.resize(static_cast<size_t>(n));
  for (HighsInt j = 0; j < n; ++j) lp.col_lower_[j] = p.lower[j] == -kInf ? -kHighsInf : p.lower[j];
  lp.col_upper_.assign(static_cast<size_t>(n), kHighsInf);

  lp.row_lower_.reserve(static_cast<size_t>(lp.num_row_));
  lp.row_upper_.reserve(static_cast<size_t>(lp.num_row_));
  for (HighsInt i = 0; i < m_eq; ++i) {
    lp.row_lower_.push_back(p.b_eq[i]);
    lp.row_upper_.push_back(p.b_eq[i]);
  }
  for (HighsInt i = 0; i < m_in; ++i) {
    lp.row_lower_.push_back(-kHighsInf);
    lp.row_upper_.push_back(p.b_ineq[i]);
  }

  auto& a = lp.a_matrix_;
  a.format_ = MatrixFormat::kRowwise;
  a.num_col_ = n;
  a.num_row_ = lp.num_row_;
  a.start_.clear();
  a.start_.reserve(static_cast<size_t>(lp.num_row_) + 1);
  a.start_.push_back(0);
  const auto nnz = static_cast<size_t>(p.A_eq.nonZeros() + p.A_ineq.nonZeros());
  a.index_.reserve(nnz);
  a.value_.reserve(nnz);
  for (const SparseMatrix* block : {&p.A_eq, &p.A_ineq}) {
    for (Eigen::Index r = 0; r < block->outerSize(); ++r) {
      for (SparseMatrix::InnerIterator it(*block, r); it; ++it) {
        if (it.value() == 0.0) continue;
        a.index_.push_back(static_cast<HighsInt>(it.col()));
        a.value_.push_back(it.value());
      }
      a.start_.push_back(static_cast<HighsInt>(a.index_.size()));
    }
  }
  return lp;
}

struct Attempt {
  bool presolve = true;
  double feas_tol = 1e-9;
  const char* solver = "simplex";
  int simplex_strategy = 1;  // 1 dual, 4 primal
};

struct RawResult {
  HighsModelStatus status = HighsModelStatus::kNotset;
  std::vector<double> x;
  double objective = 0.0;
};

RawResult run_highs(const HighsLp& lp, const SolverConfig& config, const Attempt& attempt) {
  Highs highs;
  highs.setOptionValue("output_flag", false);
  highs.setOptionValue("threads", 1);
  highs.setOptionValue("random_seed", 0);
  highs.setOptionValue("solver", attempt.solver);
  highs.setOptionValue("simplex_strategy", static_cast<HighsInt>(attempt.simplex_strategy));
  highs.setOptionValue("run_crossover", "on");
  highs.setOptionValue("presolve", attempt.presolve ? "on" : "off");
  highs.setOptionValue("primal_feasibility_tolerance", attempt.feas_tol);
  highs.setOptionValue("dual_feasibility_tolerance", attempt.feas_tol);
  highs.setOptionValue("time_limit", config.time_limit_seconds);
  if (config.max_iterations > 0) {
    highs.setOptionValue("simplex_iteration_limit", static_cast<HighsInt>(config.max_iterations));
  }
  RawResult out;
  if (highs.passModel(lp) == HighsStatus::kError) {
    out.status = HighsModelStatus::kModelError;
    return out;
  }
  if (highs.run() == HighsStatus::kError) {
    out.status = HighsModelStatus::kSolveError;
    return out;
  }
  out.status = highs.getModelStatus();
  if (out.status == HighsModelStatus::kOptimal) {
    out.x = highs.getSolution().col_value;
    out.objective = highs.getInfo().objective_function_value;
  }
  return out;
}

// A problem without rows decomposes per variable.
LpOutcome solve_rowless(const LpProblem& p, bool with_cost) {
  LpOutcome out;
  Eigen::VectorXd x(p.num_vars);
  for (int j = 0; j < p.num_vars; ++j) {
    const double c = with_cost && p.has_objective() ? p.cost[j] : 0.0;
    const bool free = p.lower[j] == -kInf;
    if (c < 0.0 || (c > 0.0 && free)) {
      out.status = LpStatus::Unbounded;
      return out;
    }
    x[j] = free ? 0.0 : p.lower[j];
  }
  out.status = with_cost && p.has_objective() ? LpStatus::Optimal : LpStatus::Feasible;
  out.objective_value = with_cost && p.has_objective() ? p.cost.dot(x) : 0.0;
  out.solution = std::move(x);
  return out;
}

}  // namespace

LpOutcome solve(const LpProblem& problem, const SolverConfig& config) {
  problem.validate();
  if (!(config.eq_tol > 0.0) || !(config.ineq_tol > 0.0)) {
    throw std::invalid_argument("SolverConfig tolerances must be positive");
  }
  const bool with_cost = !config.feasibility_only && problem.has_objective();
  if (problem.A_eq.rows() + problem.A_ineq.rows() == 0) return solve_rowless(problem, with_cost);

  const HighsLp lp = to_highs(problem, with_cost);
  const double base_tol = std::min({1e-9, config.eq_tol * 1e-2, config.ineq_tol * 1e-2});
  // Later attempts only run when an earlier one fails or its point does not verify.
  const Attempt attempts[] = {{true, base_tol, "simplex", 1},
                              {false, base_tol, "simplex", 1},
                              {true, base_tol, "ipm", 1},
                              {false, base_tol * 1e-1, "simplex", 4}};

  LpOutcome out;
  out.status = LpStatus::NumericalFailure;
  for (const Attempt& attempt : attempts) {
    RawResult raw = run_highs(lp, config, attempt);
    switch (raw.status) {
      case HighsModelStatus::kOptimal: {
        Eigen::VectorXd x =
            Eigen::Map<Eigen::VectorXd>(raw.x.data(), static_cast<Eigen::Index>(raw.x.size()));
        if (!verify_solution(problem, x, config)) continue;
        out.status = with_cost ? LpStatus::Optimal : LpStatus::Feasible;
        out.objective_value = with_cost ? problem.cost.dot(x) : 0.0;
        out.solution = std::move(x);
        return out;
      }
      case HighsModelStatus::kInfeasible:
        out.status = LpStatus::Infeasible;
        return out;
      case HighsModelStatus::kUnbounded:
        out.status = LpStatus::Unbounded;
        return out;
      case HighsModelStatus::kUnboundedOrInfeasible: {
        if (!with_cost) {
          out.status = LpStatus::Infeasible;
          return out;
        }
        // Disambiguate with the zero-cost feasibility problem.
        const RawResult feas = run_highs(to_highs(problem, false), config, attempt);
        if (feas.status == HighsModelStatus::kInfeasible) {
          out.status = LpStatus::Infeasible;
          return out;
        }
        if (feas.status == HighsModelStatus::kOptimal) {
          out.status = LpStatus::Unbounded;
          return out;
        }
        continue;
      }
      default:
        continue;
    }
  }
  return out;
}

}  // namespace invset
