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
#include "invset/lp.hpp"
#include "invset/polyhedra.hpp"
#include "invset/system.hpp"

namespace invset {

struct LiftDims {
  int n_bar = 0;
  int n_g_bar = 0;
  int n_h_bar = 0;

  bool operator==(const LiftDims&) const = default;
};

// n̄ = n + N m, n_ḡ = n_h + N n_g, n_h̄ = n_h + 2 N m.
LiftDims nstep_dims(int n, int m, int n_h, int n_g, int N);
// n̄ = (1+N) n + N(N+1)/2 m + N, n_ḡ = 2n + N n_h + N(N+1)/2 n_g + N + 1,
// n_h̄ = n_h + 2 n N + N(N+1) m + 2N.
LiftDims stop1_dims(int n, int m, int n_h, int n_g, int N);

// Target Ḡ x̄ <= ḡ over x̄ = (x, u_1, ..., u_N) with first block row
// [H A^N, H B, H A B, ..., H A^{N-1} B] and N diagonal G blocks; the seed
// H̄, h̄ embeds Ω × {0}. ĝ = (0, g, ..., g) and g̃ = (h, 0, ..., 0).
struct NStepMatrices {
  SparseMatrix G_bar;
  Eigen::VectorXd g_bar;
  SparseMatrix H_bar;
  Eigen::VectorXd h_bar;
  Eigen::VectorXd g_hat;
  Eigen::VectorXd g_tilde;
  LiftDims dims;
};

NStepMatrices build_nstep_matrices(const LinearSystem& sys, const Polyhedron& Omega,
                                   const Polyhedron& U, int N);

// Some ⇒ Ω ⊆ Ω_N, so the convex hull of Ω_1..Ω_N is control invariant.
// scaled = false: the plain N-step inclusion with rhs ḡ.
// scaled = true: rhs g̃ + β ĝ with β free for the β-LP.
LiftedInclusion nstep_problem(const NStepMatrices& mats, int n, bool scaled);

std::optional<InclusionCertificate> check_nstep(const LinearSystem& sys, const Polyhedron& Omega,
                                                const Polyhedron& U, int N,
                                                const SolverConfig& config = {});

struct NStepResult {
  int N = 0;
  double beta = 0.0;
  // Absent when β < 10·ineq_tol: every multiple of Ω satisfies the condition.
  std::optional<double> alpha;
  InclusionCertificate certificate;
  Polyhedron omega;
  LiftDims dims;
  int lp_vars = 0;
  int lp_rows = 0;
  double solve_seconds = 0.0;
};

// min β >= 0 with T H̄ = Ḡ M, T h̄ <= β ĝ + g̃ and [I 0] M = [I 0].
// nullopt when no β works at this horizon.
std::optional<NStepResult> solve_beta(const LinearSystem& sys, const Polyhedron& Omega,
                                      const Polyhedron& U, int N, const SolverConfig& config = {});

// Smallest N <= N_max for which check_nstep certifies Ω.
std::optional<int> algorithm2_search(const LinearSystem& sys, const Polyhedron& Omega,
                                     const Polyhedron& U, int N_max,
                                     const SolverConfig& config = {});

// Certificate problem for αΩ ⊆ co(∪_{k<=N} Ω_k^α). The map is affine: a
// linear one would force λ(x) >= 0 to vanish on the symmetric αΩ.
LiftedInclusion stop1_problem(const LinearSystem& sys, const Polyhedron& Omega,
                              const Polyhedron& U, int N, double alpha);

std::optional<InclusionCertificate> check_stop1_lp(const LinearSystem& sys, const Polyhedron& Omega,
                                                   const Polyhedron& U, int N, double alpha,
                                                   const SolverConfig& config = {});

struct Stop1Search {
  double alpha = 0.0;     // largest certified value found
  double alpha_fail = 0.0;  // smallest value seen to fail; +inf if none did
  int lp_solves = 0;
};

// Doubles from alpha_start until the condition fails, then bisects.
// nullopt when alpha_start itself is not certified.
std::optional<Stop1Search> stop1_alpha_search(const LinearSystem& sys, const Polyhedron& Omega,
                                              const Polyhedron& U, int N, double alpha_start,
                                              const SolverConfig& config = {}, int iterations = 20);

}  // namespace invset
