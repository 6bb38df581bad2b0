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

#include "invset/inclusion.hpp"

#include <stdexcept>
#include <string>

namespace invset {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// Infeasible means no certificate; anything else that is not a solution is an error.
bool certified(const LpOutcome& out, const char* where) {
  if (out.status == LpStatus::Infeasible) return false;
  if (!out.ok()) {
    throw SolverError(std::string(where) + ": LP returned " + std::string(to_string(out.status)));
  }
  return true;
}

}  // namespace

std::optional<InclusionCertificate> farkas_inclusion(const Polyhedron& Gamma,
                                                     const Polyhedron& Delta,
                                                     const SolverConfig& config) {
  require(Gamma.dim() == Delta.dim(), "farkas_inclusion: dimension mismatch");
  const int p = Gamma.rows();
  const int q = Delta.rows();
  const int n = Gamma.dim();
  LpProblem lp(p * q, "farkas_inclusion");
  lp.lower.setZero();

  RowBuilder eq(lp.num_vars);
  RowBuilder in(lp.num_vars);
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < n; ++j) {
      const int r = eq.add_row(Delta.H()(i, j));
      for (int l = 0; l < p; ++l) eq.add(r, i * p + l, Gamma.H()(l, j));
    }
    const int r = in.add_row(Delta.h()[i]);
    for (int l = 0; l < p; ++l) in.add(r, i * p + l, Gamma.h()[l]);
  }
  lp.A_eq = eq.matrix();
  lp.b_eq = eq.rhs();
  lp.A_ineq = in.matrix();
  lp.b_ineq = in.rhs();

  const LpOutcome out = solve(lp, config);
  if (!certified(out, "farkas_inclusion")) return std::nullopt;
  InclusionCertificate cert;
  cert.T = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      out.solution->data(), q, p);
  return cert;
}

bool verify_farkas(const Polyhedron& Gamma, const Polyhedron& Delta,
                   const InclusionCertificate& cert, const SolverConfig& config) {
  const Eigen::MatrixXd& T = cert.T;
  if (T.rows() != Delta.rows() || T.cols() != Gamma.rows()) return false;
  if (T.size() > 0 && T.minCoeff() < -config.ineq_tol) return false;
  if (T.size() > 0 && (T * Gamma.H() - Delta.H()).cwiseAbs().maxCoeff() > config.eq_tol) return false;
  if (Delta.rows() > 0 && (T * Gamma.h() - Delta.h()).maxCoeff() > config.ineq_tol) return false;
  return true;
}

void LiftedInclusion::validate() const {
  require(H_bar.cols() == G_bar.cols(), "LiftedInclusion: source and target live in different spaces");
  require(H_bar.rows() == h_bar.size(), "LiftedInclusion: h̄ length mismatch");
  require(G_bar.rows() == g_bar.size(), "LiftedInclusion: ḡ length mismatch");
  require(n >= 0 && n <= G_bar.cols(), "LiftedInclusion: bad projection dimension");
  if (g_hat) require(g_hat->size() == g_bar.size(), "LiftedInclusion: ĝ length mismatch");
}

void embed_seed(const Polyhedron& Omega, int n_bar, SparseMatrix& H_bar, Eigen::VectorXd& h_bar) {
  const int n = Omega.dim();
  require(n_bar >= n, "embed_seed: n_bar < n");
  const int tail = n_bar - n;
  RowBuilder rb(n_bar);
  for (int r = 0; r < Omega.rows(); ++r) {
    const int row = rb.add_row(Omega.h()[r]);
    for (int j = 0; j < n; ++j) rb.add(row, j, Omega.H()(r, j));
  }
  for (int sign : {1, -1}) {
    for (int j = 0; j < tail; ++j) rb.add(rb.add_row(0.0), n + j, sign);
  }
  H_bar = rb.matrix();
  h_bar = rb.rhs();
}

CertificateLayout certificate_layout(const LiftedInclusion& problem) {
  return {problem.n_g_bar(), problem.n_h_bar(), problem.n_bar(), problem.affine,
          problem.g_hat.has_value()};
}

LpProblem build_certificate_lp(const LiftedInclusion& problem) {
  problem.validate();
  const CertificateLayout L = certificate_layout(problem);
  const int ng = L.n_g_bar;
  const int nh = L.n_h_bar;
  const int nb = L.n_bar;

  LpProblem lp(L.total(), "lifted_inclusion");
  lp.lower.head(ng * nh).setZero();
  if (L.scaled) {
    lp.lower[L.beta()] = 0.0;
    lp.cost = Eigen::VectorXd::Zero(L.total());
    lp.cost[L.beta()] = 1.0;
  }

  const Eigen::SparseMatrix<double, Eigen::ColMajor> Hc = problem.H_bar;
  const SparseMatrix& G = problem.G_bar;

  // T H̄ - Ḡ M = 0, one row per (i, j).
  RowBuilder eq(L.total());
  for (int i = 0; i < ng; ++i) {
    for (int j = 0; j < nb; ++j) {
      const bool h_col_empty = Hc.outerIndexPtr()[j] == Hc.outerIndexPtr()[j + 1];
      const bool g_row_empty = G.outerIndexPtr()[i] == G.outerIndexPtr()[i + 1];
      if (h_col_empty && g_row_empty) continue;
      const int r = eq.add_row(0.0);
      for (decltype(Hc)::InnerIterator it(Hc, j); it; ++it) {
        eq.add(r, L.T(i, static_cast<int>(it.row())), it.value());
      }
      for (SparseMatrix::InnerIterator it(G, i); it; ++it) {
        eq.add(r, L.M(static_cast<int>(it.col()), j), -it.value());
      }
    }
  }
  // [I 0] M = [I 0] and c_{1..n} = 0.
  for (int r = 0; r < problem.n; ++r) {
    for (int j = 0; j < nb; ++j) eq.add(eq.add_row(r == j ? 1.0 : 0.0), L.M(r, j), 1.0);
    if (L.affine) eq.add(eq.add_row(0.0), L.c(r), 1.0);
  }

  // T h̄ + Ḡ c - β ĝ <= g̃.
  RowBuilder in(L.total());
  for (int i = 0; i < ng; ++i) {
    const int r = in.add_row(problem.g_bar[i]);
    for (int l = 0; l < nh; ++l) in.add(r, L.T(i, l), problem.h_bar[l]);
    if (L.affine) {
      for (SparseMatrix::InnerIterator it(G, i); it; ++it) {
        in.add(r, L.c(static_cast<int>(it.col())), it.value());
      }
    }
    if (L.scaled) in.add(r, L.beta(), -(*problem.g_hat)[i]);
  }

  lp.A_eq = eq.matrix();
  lp.b_eq = eq.rhs();
  lp.A_ineq = in.matrix();
  lp.b_ineq = in.rhs();
  return lp;
}

InclusionCertificate extract_certificate(const LiftedInclusion& problem, const Eigen::VectorXd& x) {
  const CertificateLayout L = certificate_layout(problem);
  require(x.size() == L.total(), "extract_certificate: solution length mismatch");
  using RowMajorMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  InclusionCertificate cert;
  cert.T = Eigen::Map<const RowMajorMat>(x.data(), L.n_g_bar, L.n_h_bar);
  cert.M = Eigen::Map<const RowMajorMat>(x.data() + L.M(0, 0), L.n_bar, L.n_bar);
  if (L.affine) cert.offset = x.segment(L.c(0), L.n_bar);
  if (L.scaled) cert.beta = x[L.beta()];
  return cert;
}

std::optional<InclusionCertificate> solve_certificate(const LiftedInclusion& problem,
                                                      const SolverConfig& config) {
  const LpProblem lp = build_certificate_lp(problem);
  const LpOutcome out = solve(lp, config);
  if (!certified(out, "solve_certificate")) return std::nullopt;
  return extract_certificate(problem, *out.solution);
}

bool verify_certificate(const LiftedInclusion& problem, const InclusionCertificate& cert,
                        const SolverConfig& config) {
  const int ng = problem.n_g_bar();
  const int nh = problem.n_h_bar();
  const int nb = problem.n_bar();
  if (!cert.M || cert.T.rows() != ng || cert.T.cols() != nh) return false;
  const Eigen::MatrixXd& M = *cert.M;
  if (M.rows() != nb || M.cols() != nb) return false;
  if (problem.affine != cert.offset.has_value()) return false;
  if (problem.g_hat.has_value() != cert.beta.has_value()) return false;

  if (cert.T.size() > 0 && cert.T.minCoeff() < -config.ineq_tol) return false;
  const Eigen::MatrixXd lhs = cert.T * problem.H_bar;
  const Eigen::MatrixXd rhs = problem.G_bar * M;
  if (lhs.size() > 0 && (lhs - rhs).cwiseAbs().maxCoeff() > config.eq_tol) return false;

  Eigen::VectorXd slack = problem.g_bar - cert.T * problem.h_bar;
  if (cert.offset) slack -= problem.G_bar * *cert.offset;
  if (cert.beta) {
    if (*cert.beta < -config.ineq_tol) return false;
    slack += *cert.beta * *problem.g_hat;
  }
  if (slack.size() > 0 && slack.minCoeff() < -config.ineq_tol) return false;

  const int n = problem.n;
  const Eigen::MatrixXd pin = Eigen::MatrixXd::Identity(n, nb);
  if (n > 0 && (M.topRows(n) - pin).cwiseAbs().maxCoeff() > config.eq_tol) return false;
  if (cert.offset && n > 0 && cert.offset->head(n).cwiseAbs().maxCoeff() > config.eq_tol) return false;
  return true;
}

LiftedInclusion sum_inclusion_problem(const Polyhedron& Omega, const std::vector<SumTerm>& terms) {
  ImplicitPolytope target = minkowski_sum_implicit(terms);
  require(Omega.dim() == target.ambient_dim, "sum_inclusion: dim(Ω) != rows of P_i");
  LiftedInclusion problem;
  embed_seed(Omega, target.total_dim(), problem.H_bar, problem.h_bar);
  problem.G_bar = std::move(target.G_bar);
  problem.g_bar = std::move(target.g_bar);
  problem.n = Omega.dim();
  return problem;
}

LpProblem build_sum_inclusion_lp(const Polyhedron& Omega, const std::vector<SumTerm>& terms) {
  return build_certificate_lp(sum_inclusion_problem(Omega, terms));
}

std::optional<InclusionCertificate> check_sum_inclusion(const Polyhedron& Omega,
                                                        const std::vector<SumTerm>& terms,
                                                        const SolverConfig& config) {
  return solve_certificate(sum_inclusion_problem(Omega, terms), config);
}

}  // namespace invset
