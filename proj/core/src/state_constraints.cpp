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

#include "invset/state_constraints.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>

#include "invset/nstep.hpp"

namespace invset {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_inputs(const LinearSystem& sys, const Polyhedron& Omega, const Polyhedron& X,
                  const Polyhedron& U, int N) {
  sys.validate();
  require(Omega.dim() == sys.n() && X.dim() == sys.n(), "state_constraints: dim(Ω) or dim(X) != n");
  require(U.dim() == sys.m(), "state_constraints: dim(U) != m");
  require(N >= 1, "state_constraints: N must be >= 1");
  require(Omega.contains_origin() && X.contains_origin() && U.contains_origin(),
          "state_constraints: 0 must lie in Ω, X and U");
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

SigmaResult sigma_scale(const InvariantSetSpec& spec, const Polyhedron& X,
                        const SolverConfig& config) {
  require(X.dim() == spec.sys.n(), "sigma_scale: dim(X) != n");
  require(X.contains_origin(), "sigma_scale: 0 ∉ X");
  const ImplicitPolytope S = spec.lifted();
  SigmaResult r;
  r.delta = Eigen::VectorXd::Zero(X.rows());
  for (int i = 0; i < X.rows(); ++i) {
    const Eigen::VectorXd Fi = X.H().row(i).transpose();
    if (Fi.norm() == 0.0) continue;
    const double d = support_implicit(S, Fi, config);
    r.delta[i] = d;
    if (d <= 0.0) continue;
    const double fi = X.h()[i];
    if (d == kInf || fi == 0.0) {
      r.sigma = 0.0;
      r.degenerate = true;
      continue;
    }
    r.sigma = std::min(r.sigma, fi / d);
  }
  return r;
}

TrajectorySetSpec ConstrainedSpec::normalized() const {
  require(mu > 0.0, "ConstrainedSpec: mu must be > 0");
  return {sys, omega, u_set, x_set, 1.0, mu, mu};
}

TrajectorySetSpec ConstrainedSpec::state_frame() const {
  require(mu > 0.0, "ConstrainedSpec: mu must be > 0");
  return {sys, omega, u_set, x_set, 1.0 / mu, 1.0, 1.0};
}

ImplicitPolytope build_constrained_omega_k(const ConstrainedSpec& spec, int k) {
  require(k >= 1 && k <= spec.N, "build_constrained_omega_k: need 1 <= k <= N");
  return lift_k_step(spec.normalized(), k).set;
}

ImplicitPolytope mu_set(const ConstrainedSpec& spec) {
  return lift_horizon_union(spec.state_frame(), spec.N);
}

LiftedInclusion mu_nstep_problem(const LinearSystem& sys, const Polyhedron& Omega,
                                 const Polyhedron& X, const Polyhedron& U, int N) {
  check_inputs(sys, Omega, X, U, N);
  const SplitLiftedSet split = lift_k_step({sys, Omega, U, X, 1.0, 1.0, 1.0}, N);
  LiftedInclusion p;
  embed_seed(Omega, split.set.total_dim(), p.H_bar, p.h_bar);
  p.G_bar = split.set.G_bar;
  p.g_bar = split.rhs_terminal;
  p.g_hat = split.rhs_state + split.rhs_input;
  p.n = sys.n();
  return p;
}

std::optional<MuResult> solve_mu_nstep(const LinearSystem& sys, const Polyhedron& Omega,
                                       const Polyhedron& X, const Polyhedron& U, int N,
                                       const SolverConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  auto cert = solve_certificate(mu_nstep_problem(sys, Omega, X, U, N), config);
  if (!cert) return std::nullopt;
  MuResult r;
  r.spec = {sys, Omega, X, U, N, std::max(0.0, *cert->beta)};
  r.certificate = std::move(cert);
  r.lp_solves = 1;
  r.solve_seconds = seconds_since(t0);
  return r;
}

LiftedInclusion mu_full_problem(const LinearSystem& sys, const Polyhedron& Omega,
                                const Polyhedron& X, const Polyhedron& U, int N, double mu) {
  check_inputs(sys, Omega, X, U, N);
  require(mu > 0.0, "mu_full_problem: mu must be > 0");
  const ConstrainedSpec spec{sys, Omega, X, U, N, mu};
  ImplicitPolytope target = lift_horizon_union(spec.normalized(), N);
  LiftedInclusion p;
  embed_seed(Omega, target.total_dim(), p.H_bar, p.h_bar);
  p.G_bar = std::move(target.G_bar);
  p.g_bar = std::move(target.g_bar);
  p.n = sys.n();
  p.affine = true;
  return p;
}

std::optional<MuResult> solve_mu_full(const LinearSystem& sys, const Polyhedron& Omega,
                                      const Polyhedron& X, const Polyhedron& U, int N,
                                      const SolverConfig& config, const MuSearchOptions& options) {
  check_inputs(sys, Omega, X, U, N);
  require(options.rel_tol > 0.0, "solve_mu_full: rel_tol must be > 0");
  const auto t0 = std::chrono::steady_clock::now();
  MuResult r;
  auto attempt = [&](double mu) {
    ++r.lp_solves;
    return solve_certificate(mu_full_problem(sys, Omega, X, U, N, mu), config);
  };

  // Ω ⊆ μX is necessary, which bounds μ from below.
  const ImplicitPolytope om = as_implicit(Omega);
  double lo = 0.0;
  for (int i = 0; i < X.rows(); ++i) {
    const Eigen::VectorXd Fi = X.H().row(i).transpose();
    if (Fi.norm() == 0.0) continue;
    const double d = support_implicit(om, Fi, config);
    if (d <= 0.0) continue;
    if (X.h()[i] == 0.0 || d == kInf) return std::nullopt;
    lo = std::max(lo, d / X.h()[i]);
  }

  std::optional<InclusionCertificate> best;
  double hi = 0.0;
  if (lo > 0.0 && (best = attempt(lo))) {
    hi = lo;
  } else {
    hi = options.feasible_hint.value_or(std::max(2.0 * lo, 1e-3));
    while (!(best = attempt(hi))) {
      if (r.lp_solves >= options.max_iterations) return std::nullopt;
      lo = std::max(lo, hi);
      hi *= 2.0;
    }
  }
  while (hi - lo > options.rel_tol * hi && r.lp_solves < options.max_iterations) {
    const double mid = 0.5 * (lo + hi);
    if (auto c = attempt(mid)) {
      hi = mid;
      best = std::move(c);
    } else {
      lo = mid;
    }
  }
  r.spec = {sys, Omega, X, U, N, hi};
  r.certificate = std::move(best);
  r.solve_seconds = seconds_since(t0);
  return r;
}

}  // namespace invset
