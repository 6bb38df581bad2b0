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
#include <vector>

#include "invset/lp.hpp"
#include "invset/polyhedra.hpp"

namespace invset {

struct InclusionCertificate {
  Eigen::MatrixXd T;                      // n_ḡ × n_h̄, entrywise >= 0
  std::optional<Eigen::MatrixXd> M;       // n̄ × n̄; absent for the plain Farkas case
  std::optional<Eigen::VectorXd> offset;  // c of an affine map x̄ ↦ M x̄ + c
  std::optional<double> beta;
};

// Γ ⊆ Δ iff some T >= 0 has T H_Γ = G_Δ and T h_Γ <= g_Δ (Γ nonempty).
std::optional<InclusionCertificate> farkas_inclusion(const Polyhedron& Gamma,
                                                     const Polyhedron& Delta,
                                                     const SolverConfig& config = {});

bool verify_farkas(const Polyhedron& Gamma, const Polyhedron& Delta,
                   const InclusionCertificate& cert, const SolverConfig& config = {});

// Source Ω̄ = {H̄ x̄ <= h̄} and target Ω_⊕ = {Ḡ x̄ <= ḡ} in the same lifted
// space; both project onto the first n coordinates. A certificate proves
// proj Ω̄ ⊆ proj Ω_⊕ through
//   T H̄ = Ḡ M,  T h̄ + Ḡ c <= g̃ + β ĝ,  [I 0] M = [I 0],  c_{1..n} = 0,  T >= 0,
// where c is present only for affine maps and β only when ĝ is given (then
// β >= 0 is minimized and ḡ plays the role of g̃).
struct LiftedInclusion {
  SparseMatrix H_bar;
  Eigen::VectorXd h_bar;
  SparseMatrix G_bar;
  Eigen::VectorXd g_bar;
  int n = 0;
  std::optional<Eigen::VectorXd> g_hat;
  bool affine = false;

  int n_bar() const { return static_cast<int>(G_bar.cols()); }
  int n_g_bar() const { return static_cast<int>(G_bar.rows()); }
  int n_h_bar() const { return static_cast<int>(H_bar.rows()); }
  void validate() const;
};

// Ω × {0}: H̄ = [H 0; 0 I; 0 -I], h̄ = (h, 0, 0) in R^{n_bar}.
void embed_seed(const Polyhedron& Omega, int n_bar, SparseMatrix& H_bar, Eigen::VectorXd& h_bar);

// Variable order: T row-major, M row-major, then c, then β.
struct CertificateLayout {
  int n_g_bar = 0;
  int n_h_bar = 0;
  int n_bar = 0;
  bool affine = false;
  bool scaled = false;

  int T(int i, int l) const { return i * n_h_bar + l; }
  int M(int r, int j) const { return n_g_bar * n_h_bar + r * n_bar + j; }
  int c(int r) const { return M(n_bar, 0) + r; }
  int beta() const { return M(n_bar, 0) + (affine ? n_bar : 0); }
  int total() const { return beta() + (scaled ? 1 : 0); }
};

CertificateLayout certificate_layout(const LiftedInclusion& problem);
LpProblem build_certificate_lp(const LiftedInclusion& problem);
InclusionCertificate extract_certificate(const LiftedInclusion& problem, const Eigen::VectorXd& x);

// nullopt means the sufficient condition could not be met (inconclusive).
// Throws SolverError on numerical failure.
std::optional<InclusionCertificate> solve_certificate(const LiftedInclusion& problem,
                                                      const SolverConfig& config = {});

// Recomputes every constraint block from the certificate alone.
bool verify_certificate(const LiftedInclusion& problem, const InclusionCertificate& cert,
                        const SolverConfig& config = {});

// Sum-inclusion test Ω ⊆ ⊕ P_i Γ_i for any number of summands.
LiftedInclusion sum_inclusion_problem(const Polyhedron& Omega, const std::vector<SumTerm>& terms);
LpProblem build_sum_inclusion_lp(const Polyhedron& Omega, const std::vector<SumTerm>& terms);
std::optional<InclusionCertificate> check_sum_inclusion(const Polyhedron& Omega,
                                                        const std::vector<SumTerm>& terms,
                                                        const SolverConfig& config = {});

}  // namespace invset
