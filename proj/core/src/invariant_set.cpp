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

#include "invset/invariant_set.hpp"

#include <stdexcept>
#include <string>

namespace invset {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

[[noreturn]] void solver_failure(const char* where, LpStatus status) {
  throw SolverError(std::string(where) + ": LP returned " + std::string(to_string(status)));
}

}  // namespace

void InvariantSetSpec::validate() const {
  require(N >= 1, "InvariantSetSpec: N must be >= 1");
  require(alpha > 0.0, "InvariantSetSpec: alpha must be > 0");
  trajectory().validate();
}

TrajectorySetSpec InvariantSetSpec::trajectory() const {
  return {sys, omega, u_set, std::nullopt, alpha, 1.0, 1.0};
}

ImplicitPolytope InvariantSetSpec::lifted() const {
  validate();
  return lift_horizon_union(trajectory(), N);
}

int InvariantSetSpec::lifted_dim() const { return union_layout(trajectory(), N).total(); }

bool membership(const InvariantSetSpec& spec, const Eigen::VectorXd& x, const SolverConfig& config) {
  return member_implicit(spec.lifted(), x, config);
}

double support(const InvariantSetSpec& spec, const Eigen::VectorXd& c, const SolverConfig& config) {
  require(c.size() == spec.sys.n(), "support: dimension mismatch");
  require(c.norm() > 0.0, "support: direction must be nonzero");
  return support_implicit(spec.lifted(), c, config);
}

InvarianceReport verify_control_invariance(const ImplicitPolytope& S, const LinearSystem& sys,
                                           const Polyhedron& U,
                                           const std::vector<Eigen::VectorXd>& points,
                                           const SolverConfig& config, const Polyhedron* X) {
  sys.validate();
  const int n = sys.n();
  const int m = sys.m();
  require(S.ambient_dim == n, "verify_control_invariance: set dimension != n");
  require(U.dim() == m, "verify_control_invariance: dim(U) != m");
  const int nb = S.total_dim();

  // Variables (u, ȳ); only the equality right-hand side depends on x.
  LpProblem base(m + nb, "control_invariance");
  RowBuilder in(base.num_vars);
  for (int r = 0; r < U.rows(); ++r) {
    const int row = in.add_row(U.h()[r]);
    for (int j = 0; j < m; ++j) in.add(row, j, U.H()(r, j));
  }
  for (Eigen::Index r = 0; r < S.G_bar.outerSize(); ++r) {
    const int row = in.add_row(S.g_bar[r]);
    for (SparseMatrix::InnerIterator it(S.G_bar, r); it; ++it) {
      in.add(row, m + static_cast<int>(it.col()), it.value());
    }
  }
  RowBuilder eq(base.num_vars);
  for (int i = 0; i < n; ++i) {
    const int row = eq.add_row(0.0);
    eq.add(row, m + i, 1.0);
    for (int j = 0; j < m; ++j) eq.add(row, j, -sys.B(i, j));
  }
  base.A_ineq = in.matrix();
  base.b_ineq = in.rhs();
  base.A_eq = eq.matrix();

  InvarianceReport report;
  for (size_t p = 0; p < points.size(); ++p) {
    const Eigen::VectorXd& x = points[p];
    require(x.size() == n, "verify_control_invariance: point dimension != n");
    ++report.checked;
    if (X && !X->contains(x, config.ineq_tol)) {
      report.failures.push_back(static_cast<int>(p));
      report.inputs.emplace_back();
      continue;
    }
    LpProblem lp = base;
    lp.b_eq = sys.A * x;
    const LpOutcome out = solve(lp, config);
    if (out.status == LpStatus::NumericalFailure) solver_failure("verify_control_invariance", out.status);
    if (out.ok()) {
      report.inputs.push_back(out.solution->head(m));
    } else {
      report.failures.push_back(static_cast<int>(p));
      report.inputs.emplace_back();
    }
  }
  return report;
}

InvarianceReport verify_control_invariance(const InvariantSetSpec& spec,
                                           const std::vector<Eigen::VectorXd>& points,
                                           const SolverConfig& config) {
  return verify_control_invariance(spec.lifted(), spec.sys, spec.u_set, points, config);
}

double ray_boundary(const MembershipPredicate& member, const Eigen::VectorXd& v, double r_hi,
                    int iters) {
  require(v.norm() > 0.0, "ray_boundary: v must be nonzero");
  require(r_hi > 0.0 && iters >= 0, "ray_boundary: bad bracket");
  require(member(Eigen::VectorXd::Zero(v.size())), "ray_boundary: origin is not a member");
  require(!member(r_hi * v), "ray_boundary: r_hi·v is not outside the set");
  double lo = 0.0;
  double hi = r_hi;
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    (member(mid * v) ? lo : hi) = mid;
  }
  return lo;
}

double ray_extent(const ImplicitPolytope& S, const Eigen::VectorXd& v, const SolverConfig& config) {
  require(v.size() == S.ambient_dim, "ray_extent: dimension mismatch");
  const int n = S.ambient_dim;
  const int tail = S.total_dim() - n;
  // Variables (r, tail of x̄) with x = r v substituted.
  LpProblem lp(1 + tail, "ray_extent");
  lp.lower[0] = 0.0;
  lp.cost = Eigen::VectorXd::Zero(lp.num_vars);
  lp.cost[0] = -1.0;
  RowBuilder in(lp.num_vars);
  for (Eigen::Index r = 0; r < S.G_bar.outerSize(); ++r) {
    const int row = in.add_row(S.g_bar[r]);
    double coeff_r = 0.0;
    for (SparseMatrix::InnerIterator it(S.G_bar, r); it; ++it) {
      if (it.col() < n) {
        coeff_r += it.value() * v[it.col()];
      } else {
        in.add(row, 1 + static_cast<int>(it.col()) - n, it.value());
      }
    }
    in.add(row, 0, coeff_r);
  }
  lp.A_ineq = in.matrix();
  lp.b_ineq = in.rhs();
  const LpOutcome out = solve(lp, config);
  switch (out.status) {
    case LpStatus::Optimal:
      return (*out.solution)[0];
    case LpStatus::Unbounded:
      return kInf;
    case LpStatus::Infeasible:
      throw std::domain_error("ray_extent: set does not contain the origin");
    default:
      solver_failure("ray_extent", out.status);
  }
}

}  // namespace invset
