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

#include <optional>

#include "invset/inclusion.hpp"
#include "invset/invariant_set.hpp"
#include "invset/lifted_sets.hpp"
#include "invset/polyhedra.hpp"

namespace invset {

struct SigmaResult {
  double sigma = 1.0;
  Eigen::VectorXd delta;  // δ_i = max F_i x over the invariant set
  bool degenerate = false;  // some row forced σ = 0
};

// σ = min{1, f_i/δ_i} over rows with δ_i > 0; then σ·Ω∞^α ⊆ X.
SigmaResult sigma_scale(const InvariantSetSpec& spec, const Polyhedron& X,
                        const SolverConfig& config = {});

// Ω, X, U with the μ-scheme scaling. In normalized form trajectories end in
// Ω, stay in μX and use μU; in state coordinates (σ = 1/μ) they end in σΩ,
// stay in X and use U. The two frames differ by the factor σ.
struct ConstrainedSpec {
  LinearSystem sys;
  Polyhedron omega;
  Polyhedron x_set;
  Polyhedron u_set;
  int N = 1;
  double mu = 1.0;

  double sigma() const { return 1.0 / mu; }
  TrajectorySetSpec normalized() const;
  TrajectorySetSpec state_frame() const;
};

// Ω_k^1(μX, μU) over (x, u_1, ..., u_k), u_{j+1} applied at step j.
ImplicitPolytope build_constrained_omega_k(const ConstrainedSpec& spec, int k);

// co(∪_{k<=N} Ω_k^σ(X, U)) in state coordinates; contained in X.
ImplicitPolytope mu_set(const ConstrainedSpec& spec);

struct MuResult {
  ConstrainedSpec spec;
  std::optional<InclusionCertificate> certificate;  // at the reported μ
  int lp_solves = 0;
  double solve_seconds = 0.0;
};

// Ω ⊆ Ω_N(μX, μU) as a β-scaled inclusion: terminal rows carry g̃, state and
// input rows carry ĝ, and β plays the role of μ.
LiftedInclusion mu_nstep_problem(const LinearSystem& sys, const Polyhedron& Omega,
                                 const Polyhedron& X, const Polyhedron& U, int N);

// min μ >= 0 with Ω ⊆ Ω_N^1(μX, μU): terminal rows fixed, X and U rows scaled.
std::optional<MuResult> solve_mu_nstep(const LinearSystem& sys, const Polyhedron& Omega,
                                       const Polyhedron& X, const Polyhedron& U, int N,
                                       const SolverConfig& config = {});

struct MuSearchOptions {
  double rel_tol = 1e-4;
  // A μ already known to be feasible (for example μ from solve_mu_nstep).
  std::optional<double> feasible_hint;
  int max_iterations = 80;
};

// Certificate problem for Ω ⊆ co(∪_{k<=N} Ω_k^1(μX, μU)) at fixed μ.
LiftedInclusion mu_full_problem(const LinearSystem& sys, const Polyhedron& Omega,
                                const Polyhedron& X, const Polyhedron& U, int N, double mu);

// min μ with Ω ⊆ co(∪_{k<=N} Ω_k^1(μX, μU)). λ_k multiplies μ in the lifted
// rows, so μ is found by bisection over the monotone feasibility test.
std::optional<MuResult> solve_mu_full(const LinearSystem& sys, const Polyhedron& Omega,
                                      const Polyhedron& X, const Polyhedron& U, int N,
                                      const SolverConfig& config = {},
                                      const MuSearchOptions& options = {});

}  // namespace invset
