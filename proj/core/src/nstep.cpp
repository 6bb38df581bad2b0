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

#include "invset/nstep.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>

#include "invset/lifted_sets.hpp"

namespace invset {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_inputs(const LinearSystem& sys, const Polyhedron& Omega, const Polyhedron& U, int N) {
  sys.validate();
  require(Omega.dim() == sys.n(), "nstep: dim(Ω) != n");
  require(U.dim() == sys.m(), "nstep: dim(U) != m");
  require(N >= 1, "nstep: N must be >= 1");
  require(Omega.contains_origin(), "nstep: 0 ∉ Ω");
  require(U.contains_origin(), "nstep: 0 ∉ U");
}

}  // namespace

LiftedInclusion nstep_problem(const NStepMatrices& mats, int n, bool scaled) {
  LiftedInclusion p;
  p.H_bar = mats.H_bar;
  p.h_bar = mats.h_bar;
  p.G_bar = mats.G_bar;
  p.g_bar = scaled ? mats.g_tilde : mats.g_bar;
  if (scaled) p.g_hat = mats.g_hat;
  p.n = n;
  return p;
}

LiftDims nstep_dims(int n, int m, int n_h, int n_g, int N) {
  return {n + N * m, n_h + N * n_g, n_h + 2 * N * m};
}

LiftDims stop1_dims(int n, int m, int n_h, int n_g, int N) {
  const int tri = N * (N + 1) / 2;
  return {(1 + N) * n + tri * m + N, 2 * n + N * n_h + tri * n_g + N + 1,
          n_h + 2 * n * N + N * (N + 1) * m + 2 * N};
}

NStepMatrices build_nstep_matrices(const LinearSystem& sys, const Polyhedron& Omega,
                                   const Polyhedron& U, int N) {
  check_inputs(sys, Omega, U, N);
  const int n = sys.n();
  const int m = sys.m();
  const int nh = Omega.rows();
  const int ng = U.rows();
  const MatrixPowers P(sys.A, N);

  NStepMatrices out;
  out.dims = nstep_dims(n, m, nh, ng, N);
  RowBuilder rb(out.dims.n_bar);
  for (int r = 0; r < nh; ++r) rb.add_row(Omega.h()[r]);
  auto put = [&rb](int row0, int col0, const Eigen::MatrixXd& C) {
    for (Eigen::Index r = 0; r < C.rows(); ++r)
      for (Eigen::Index c = 0; c < C.cols(); ++c)
        rb.add(row0 + static_cast<int>(r), col0 + static_cast<int>(c), C(r, c));
  };
  put(0, 0, Omega.H() * P[N]);
  for (int i = 1; i <= N; ++i) put(0, n + (i - 1) * m, Omega.H() * P[i - 1] * sys.B);
  for (int i = 1; i <= N; ++i) {
    const int row0 = rb.rows();
    for (int r = 0; r < ng; ++r) rb.add_row(U.h()[r]);
    put(row0, n + (i - 1) * m, U.H());
  }
  out.G_bar = rb.matrix();
  out.g_bar = rb.rhs();
  out.g_hat = out.g_bar;
  out.g_hat.head(nh).setZero();
  out.g_tilde = Eigen::VectorXd::Zero(out.g_bar.size());
  out.g_tilde.head(nh) = Omega.h();
  embed_seed(Omega, out.dims.n_bar, out.H_bar, out.h_bar);
  return out;
}

std::optional<InclusionCertificate> check_nstep(const LinearSystem& sys, const Polyhedron& Omega,
                                                const Polyhedron& U, int N,
                                                const SolverConfig& config) {
  const NStepMatrices mats = build_nstep_matrices(sys, Omega, U, N);
  return solve_certificate(nstep_problem(mats, sys.n(), false), config);
}

std::optional<NStepResult> solve_beta(const LinearSystem& sys, const Polyhedron& Omega,
                                      const Polyhedron& U, int N, const SolverConfig& config) {
  const NStepMatrices mats = build_nstep_matrices(sys, Omega, U, N);
  const LiftedInclusion problem = nstep_problem(mats, sys.n(), true);
  const LpProblem lp = build_certificate_lp(problem);

  const auto t0 = std::chrono::steady_clock::now();
  const LpOutcome out = solve(lp, config);
  const auto t1 = std::chrono::steady_clock::now();
  if (out.status == LpStatus::Infeasible) return std::nullopt;
  if (!out.ok()) {
    throw SolverError("solve_beta: LP returned " + std::string(to_string(out.status)));
  }

  std::optional<NStepResult> result(std::in_place);
  NStepResult& r = *result;
  r.N = N;
  r.certificate = extract_certificate(problem, *out.solution);
  r.beta = std::max(0.0, *r.certificate.beta);
  if (r.beta >= 10.0 * config.ineq_tol) r.alpha = 1.0 / r.beta;
  r.omega = Omega;
  r.dims = mats.dims;
  r.lp_vars = lp.num_vars;
  r.lp_rows = static_cast<int>(lp.A_eq.rows() + lp.A_ineq.rows());
  r.solve_seconds = std::chrono::duration<double>(t1 - t0).count();
  return result;
}

std::optional<int> algorithm2_search(const LinearSystem& sys, const Polyhedron& Omega,
                                     const Polyhedron& U, int N_max, const SolverConfig& config) {
  require(N_max >= 1, "algorithm2_search: N_max must be >= 1");
  for (int N = 1; N <= N_max; ++N) {
    if (check_nstep(sys, Omega, U, N, config)) return N;
  }
  return std::nullopt;
}

LiftedInclusion stop1_problem(const LinearSystem& sys, const Polyhedron& Omega,
                              const Polyhedron& U, int N, double alpha) {
  check_inputs(sys, Omega, U, N);
  require(alpha > 0.0, "stop1: alpha must be > 0");
  TrajectorySetSpec spec{sys, Omega, U, std::nullopt, alpha, 1.0, 1.0};
  ImplicitPolytope target = lift_horizon_union(spec, N);

  LiftedInclusion p;
  embed_seed(scale(Omega, alpha), target.total_dim(), p.H_bar, p.h_bar);
  p.G_bar = std::move(target.G_bar);
  p.g_bar = std::move(target.g_bar);
  p.n = sys.n();
  p.affine = true;
  return p;
}

std::optional<InclusionCertificate> check_stop1_lp(const LinearSystem& sys, const Polyhedron& Omega,
                                                   const Polyhedron& U, int N, double alpha,
                                                   const SolverConfig& config) {
  return solve_certificate(stop1_problem(sys, Omega, U, N, alpha), config);
}

std::optional<Stop1Search> stop1_alpha_search(const LinearSystem& sys, const Polyhedron& Omega,
                                              const Polyhedron& U, int N, double alpha_start,
                                              const SolverConfig& config, int iterations) {
  require(alpha_start > 0.0, "stop1_alpha_search: alpha_start must be > 0");
  Stop1Search s;
  auto holds = [&](double a) {
    ++s.lp_solves;
    return check_stop1_lp(sys, Omega, U, N, a, config).has_value();
  };
  if (!holds(alpha_start)) return std::nullopt;
  s.alpha = alpha_start;
  s.alpha_fail = kInf;
  constexpr int kMaxDoublings = 40;
  for (int i = 0; i < kMaxDoublings; ++i) {
    const double trial = 2.0 * s.alpha;
    if (!holds(trial)) {
      s.alpha_fail = trial;
      break;
    }
    s.alpha = trial;
  }
  if (s.alpha_fail == kInf) return s;
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (s.alpha + s.alpha_fail);
    (holds(mid) ? s.alpha : s.alpha_fail) = mid;
  }
  return s;
}

}  // namespace invset
