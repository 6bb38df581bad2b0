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

#include "invset/polyhedra.hpp"

#include <stdexcept>
#include <string>

namespace invset {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

[[noreturn]] void solver_failure(const std::string& where, LpStatus status) {
  throw SolverError(where + ": LP returned " + std::string(to_string(status)));
}

}  // namespace

Polyhedron::Polyhedron(Eigen::MatrixXd H, Eigen::VectorXd h) : H_(std::move(H)), h_(std::move(h)) {
  require(H_.rows() == h_.size(), "Polyhedron: H row count != length of h");
}

Polyhedron Polyhedron::empty(int dim) {
  return Polyhedron(Eigen::MatrixXd::Zero(1, dim), Eigen::VectorXd::Constant(1, -1.0));
}

bool Polyhedron::contains(const Eigen::VectorXd& x, double tol) const {
  require(x.size() == dim(), "Polyhedron::contains: dimension mismatch");
  if (rows() == 0) return true;
  return ((H_ * x - h_).array() <= tol).all();
}

bool Polyhedron::is_empty(const SolverConfig& config) const {
  LpProblem lp(dim(), "polyhedron_emptiness");
  lp.A_ineq = H_.sparseView();
  lp.b_ineq = h_;
  const LpOutcome out = solve(lp, config);
  if (out.status == LpStatus::NumericalFailure) solver_failure("Polyhedron::is_empty", out.status);
  return out.status == LpStatus::Infeasible;
}

Polyhedron unit_box(int n) {
  require(n >= 1, "unit_box: n must be >= 1");
  return box(Eigen::VectorXd::Constant(n, -1.0), Eigen::VectorXd::Constant(n, 1.0));
}

Polyhedron box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  require(lo.size() == hi.size(), "box: bound length mismatch");
  const auto n = lo.size();
  Eigen::MatrixXd H(2 * n, n);
  H << Eigen::MatrixXd::Identity(n, n), -Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd h(2 * n);
  h << hi, -lo;
  return Polyhedron(std::move(H), std::move(h));
}

Polyhedron preimage(const Eigen::MatrixXd& A, const Polyhedron& P) {
  require(A.rows() == P.dim(), "preimage: A row count != P.dim");
  return Polyhedron(P.H() * A, P.h());
}

Polyhedron scale(const Polyhedron& P, double gamma, const SolverConfig& config) {
  require(gamma >= 0.0, "scale: gamma must be >= 0");
  if (gamma > 0.0) return Polyhedron(P.H(), gamma * P.h());
  if (P.is_empty(config)) return Polyhedron::empty(P.dim());
  const int n = P.dim();
  return box(Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n));
}

ImplicitPolytope as_implicit(const Polyhedron& P) {
  return {P.H().sparseView(), P.h(), P.dim()};
}

ImplicitPolytope minkowski_sum_implicit(const std::vector<SumTerm>& terms) {
  require(!terms.empty(), "minkowski_sum_implicit: no terms");
  const auto n = static_cast<int>(terms.front().P.rows());
  int total = n;
  for (const SumTerm& t : terms) {
    require(t.P.rows() == n, "minkowski_sum_implicit: P_i row count mismatch");
    require(t.P.cols() == t.set.dim(), "minkowski_sum_implicit: P_i columns != dim(Γ_i)");
    total += t.set.dim();
  }

  RowBuilder rb(total);
  for (int i = 0; i < 2 * n; ++i) rb.add_row(0.0);
  for (int i = 0; i < n; ++i) {
    rb.add(i, i, 1.0);
    rb.add(n + i, i, -1.0);
  }
  int col = n;
  for (const SumTerm& t : terms) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < t.set.dim(); ++j) {
        rb.add(i, col + j, -t.P(i, j));
        rb.add(n + i, col + j, t.P(i, j));
      }
    }
    for (int r = 0; r < t.set.rows(); ++r) {
      const int row = rb.add_row(t.set.h()[r]);
      for (int j = 0; j < t.set.dim(); ++j) rb.add(row, col + j, t.set.H()(r, j));
    }
    col += t.set.dim();
  }
  return {rb.matrix(), rb.rhs(), n};
}

namespace {

// Fix the first n coordinates to x and move them to the right-hand side.
LpProblem fixed_prefix_lp(const ImplicitPolytope& S, const Eigen::VectorXd& x, const char* name) {
  const int n = S.ambient_dim;
  const int tail = S.total_dim() - n;
  LpProblem lp(tail, name);
  const SparseMatrix& G = S.G_bar;
  std::vector<Triplet> trip;
  Eigen::VectorXd rhs = S.g_bar;
  for (Eigen::Index r = 0; r < G.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(G, r); it; ++it) {
      if (it.col() < n) {
        rhs[r] -= it.value() * x[it.col()];
      } else {
        trip.emplace_back(static_cast<int>(r), static_cast<int>(it.col()) - n, it.value());
      }
    }
  }
  lp.A_ineq.resize(G.rows(), tail);
  lp.A_ineq.setFromTriplets(trip.begin(), trip.end());
  lp.b_ineq = rhs;
  return lp;
}

}  // namespace

bool member_implicit(const ImplicitPolytope& S, const Eigen::VectorXd& x,
                     const SolverConfig& config) {
  require(x.size() == S.ambient_dim, "member_implicit: dimension mismatch");
  const LpProblem lp = fixed_prefix_lp(S, x, "member_implicit");
  if (lp.num_vars == 0) {
    return lp.b_ineq.size() == 0 || (lp.b_ineq.array() >= -config.ineq_tol).all();
  }
  const LpOutcome out = solve(lp, config);
  if (out.status == LpStatus::NumericalFailure) solver_failure("member_implicit", out.status);
  return out.ok();
}

double support_implicit(const ImplicitPolytope& S, const Eigen::VectorXd& c,
                        const SolverConfig& config) {
  require(c.size() == S.ambient_dim, "support_implicit: dimension mismatch");
  LpProblem lp(S.total_dim(), "support_implicit");
  lp.A_ineq = S.G_bar;
  lp.b_ineq = S.g_bar;
  lp.cost = Eigen::VectorXd::Zero(S.total_dim());
  lp.cost.head(S.ambient_dim) = -c;
  const LpOutcome out = solve(lp, config);
  switch (out.status) {
    case LpStatus::Optimal:
      return -*out.objective_value;
    case LpStatus::Unbounded:
      return kInf;
    case LpStatus::Infeasible:
      throw std::domain_error("support_implicit: lifted region is empty");
    default:
      solver_failure("support_implicit", out.status);
  }
}

}  // namespace invset
