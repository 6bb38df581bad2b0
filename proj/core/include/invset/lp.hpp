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

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace invset {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Raised when the backend cannot produce a trustworthy answer.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LpStatus { Optimal, Feasible, Infeasible, Unbounded, NumericalFailure };

std::string_view to_string(LpStatus status);

struct SolverConfig {
  double eq_tol = 1e-7;
  double ineq_tol = 1e-7;
  // 0 leaves the backend default in place.
  long max_iterations = 0;
  // Ignore the objective and only look for a feasible point.
  bool feasibility_only = false;
  double time_limit_seconds = 600.0;
};

// minimize cost·x  s.t.  A_eq x = b_eq,  A_ineq x <= b_ineq,  x >= lower.
// A lower bound of -inf marks a free variable. An empty cost vector means a
// pure feasibility problem.
struct LpProblem {
  int num_vars = 0;
  SparseMatrix A_eq;
  Eigen::VectorXd b_eq;
  SparseMatrix A_ineq;
  Eigen::VectorXd b_ineq;
  Eigen::VectorXd lower;
  Eigen::VectorXd cost;
  std::string name;

  explicit LpProblem(int n = 0, std::string label = {});

  bool has_objective() const { return cost.size() > 0; }

  // Throws std::invalid_argument on shape mismatches or +inf/NaN bounds.
  void validate() const;
};

struct LpOutcome {
  LpStatus status = LpStatus::NumericalFailure;
  std::optional<Eigen::VectorXd> solution;
  std::optional<double> objective_value;

  bool ok() const { return status == LpStatus::Optimal || status == LpStatus::Feasible; }
};

// Row residuals are divided by max(1, largest |coefficient| of the row), so a
// row and any positive multiple of it with entries >= 1 are judged alike.
struct Residuals {
  double eq = 0.0;     // max |A_eq x - b_eq|_i / scale_i
  double ineq = 0.0;   // max (A_ineq x - b_ineq)^+_i / scale_i
  double bound = 0.0;  // max (lower - x)^+
};

Residuals residuals(const LpProblem& problem, const Eigen::VectorXd& x);

// Bound violations are judged against ineq_tol.
bool verify_solution(const LpProblem& problem, const Eigen::VectorXd& x,
                     const SolverConfig& config = {});

LpOutcome solve(const LpProblem& problem, const SolverConfig& config = {});

// Row-assembly helper for builders that append constraints block by block.
class RowBuilder {
 public:
  explicit RowBuilder(int num_vars) : num_vars_(num_vars) {}

  int add_row(double rhs) {
    rhs_.push_back(rhs);
    return rows_++;
  }
  void add(int row, int col, double value) {
    if (value != 0.0) triplets_.emplace_back(row, col, value);
  }
  int rows() const { return rows_; }
  void set_rhs(int row, double rhs) { rhs_[static_cast<size_t>(row)] = rhs; }

  SparseMatrix matrix() const;
  Eigen::VectorXd rhs() const;

 private:
  int num_vars_;
  int rows_ = 0;
  std::vector<Triplet> triplets_;
  std::vector<double> rhs_;
};

}  // namespace invset
