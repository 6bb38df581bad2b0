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

#include <gtest/gtest.h>

#include "invset/lp.hpp"

namespace invset {
namespace {

SparseMatrix dense_rows(const Eigen::MatrixXd& M) { return M.sparseView(); }

TEST(Lp, MinimizesOverBox) {
  // min -x - 2y  s.t. x + y <= 4, x <= 3, x, y >= 0.
  LpProblem lp(2, "box");
  lp.A_ineq = dense_rows((Eigen::MatrixXd(2, 2) << 1, 1, 1, 0).finished());
  lp.b_ineq = Eigen::Vector2d(4, 3);
  lp.lower.setZero();
  lp.cost = Eigen::Vector2d(-1, -2);
  const LpOutcome out = solve(lp);
  ASSERT_EQ(out.status, LpStatus::Optimal);
  EXPECT_NEAR(*out.objective_value, -8.0, 1e-9);
  EXPECT_NEAR((*out.solution)[1], 4.0, 1e-9);
}

TEST(Lp, FeasibilityOnlyReportsFeasible) {
  LpProblem lp(1, "feas");
  lp.A_eq = dense_rows(Eigen::MatrixXd::Constant(1, 1, 2.0));
  lp.b_eq = Eigen::VectorXd::Constant(1, 3.0);
  const LpOutcome out = solve(lp);
  ASSERT_EQ(out.status, LpStatus::Feasible);
  EXPECT_NEAR((*out.solution)[0], 1.5, 1e-9);
}

TEST(Lp, DetectsInfeasible) {
  LpProblem lp(1, "infeasible");
  lp.A_ineq = dense_rows((Eigen::MatrixXd(2, 1) << 1, -1).finished());
  lp.b_ineq = Eigen::Vector2d(-1, -1);  // x <= -1 and x >= 1
  EXPECT_EQ(solve(lp).status, LpStatus::Infeasible);
  lp.cost = Eigen::VectorXd::Ones(1);
  EXPECT_EQ(solve(lp).status, LpStatus::Infeasible);
}

TEST(Lp, DetectsUnbounded) {
  LpProblem lp(2, "unbounded");
  lp.A_ineq = dense_rows((Eigen::MatrixXd(1, 2) << 1, -1).finished());
  lp.b_ineq = Eigen::VectorXd::Zero(1);
  lp.cost = Eigen::Vector2d(-1, 0);
  EXPECT_EQ(solve(lp).status, LpStatus::Unbounded);
}

TEST(Lp, RowlessProblemsAreSolvedDirectly) {
  LpProblem lp(2, "rowless");
  lp.lower << 1.0, -kInf;
  lp.cost = Eigen::Vector2d(3.0, 0.0);
  const LpOutcome out = solve(lp);
  ASSERT_EQ(out.status, LpStatus::Optimal);
  EXPECT_DOUBLE_EQ(*out.objective_value, 3.0);
  lp.cost = Eigen::Vector2d(0.0, 1.0);
  EXPECT_EQ(solve(lp).status, LpStatus::Unbounded);
}

TEST(Lp, ValidateRejectsShapeErrors) {
  LpProblem lp(2, "bad");
  lp.b_ineq = Eigen::VectorXd::Ones(1);
  EXPECT_THROW(solve(lp), std::invalid_argument);
  LpProblem nan(1, "nan");
  nan.lower[0] = kInf;
  EXPECT_THROW(nan.validate(), std::invalid_argument);
  LpProblem ok(1);
  SolverConfig bad;
  bad.ineq_tol = 0.0;
  EXPECT_THROW(solve(ok, bad), std::invalid_argument);
}

TEST(Lp, ResidualsAreRelativeToRowScale) {
  LpProblem lp(1, "scale");
  lp.A_ineq = dense_rows((Eigen::MatrixXd(2, 1) << 1000.0, 0.5).finished());
  lp.b_ineq = Eigen::Vector2d(1000.0, 10.0);
  const Residuals r = residuals(lp, Eigen::VectorXd::Constant(1, 1.001));
  EXPECT_NEAR(r.ineq, 1.0 / 1000.0, 1e-12);  // (1001 - 1000) / 1000
  EXPECT_FALSE(verify_solution(lp, Eigen::VectorXd::Constant(1, 1.001)));
  EXPECT_TRUE(verify_solution(lp, Eigen::VectorXd::Constant(1, 1.0)));
  EXPECT_FALSE(verify_solution(lp, Eigen::VectorXd::Constant(1, NAN)));
}

TEST(Lp, RowBuilderSkipsZerosAndKeepsRhs) {
  RowBuilder rb(3);
  const int r0 = rb.add_row(1.0);
  const int r1 = rb.add_row(2.0);
  rb.add(r0, 0, 0.0);
  rb.add(r0, 2, 5.0);
  rb.add(r1, 1, -1.0);
  rb.set_rhs(r1, 4.0);
  const SparseMatrix M = rb.matrix();
  EXPECT_EQ(M.nonZeros(), 2);
  EXPECT_DOUBLE_EQ(M.coeff(0, 2), 5.0);
  EXPECT_EQ(rb.rhs(), Eigen::Vector2d(1.0, 4.0));
}

TEST(Lp, StatusNames) {
  EXPECT_EQ(to_string(LpStatus::Optimal), "Optimal");
  EXPECT_EQ(to_string(LpStatus::NumericalFailure), "NumericalFailure");
}

}  // namespace
}  // namespace invset
