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

#include <vector>

#include "invset/lp.hpp"

namespace invset {

// {x : H x <= h}. Nonemptiness is not enforced; ask is_empty() when it matters.
class Polyhedron {
 public:
  Polyhedron() = default;
  Polyhedron(Eigen::MatrixXd H, Eigen::VectorXd h);

  // The canonical empty set {x : 0·x <= -1}.
  static Polyhedron empty(int dim);

  const Eigen::MatrixXd& H() const { return H_; }
  const Eigen::VectorXd& h() const { return h_; }
  int dim() const { return static_cast<int>(H_.cols()); }
  int rows() const { return static_cast<int>(H_.rows()); }

  bool contains(const Eigen::VectorXd& x, double tol = 0.0) const;
  bool is_empty(const SolverConfig& config = {}) const;
  // Exact without an LP: 0 satisfies H·0 <= h iff h >= 0.
  bool contains_origin() const { return (h_.array() >= 0.0).all(); }

 private:
  Eigen::MatrixXd H_;
  Eigen::VectorXd h_;
};

Polyhedron unit_box(int n);
Polyhedron box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);

// {x : A x ∈ P} = {x : H A x <= h}; A may be singular.
Polyhedron preimage(const Eigen::MatrixXd& A, const Polyhedron& P);

// gamma·P. gamma = 0 yields {0} as 2n rows, or the empty set when P is empty.
Polyhedron scale(const Polyhedron& P, double gamma, const SolverConfig& config = {});

// proj onto the first ambient_dim coordinates of {x̄ : Ḡ x̄ <= ḡ}.
struct ImplicitPolytope {
  SparseMatrix G_bar;
  Eigen::VectorXd g_bar;
  int ambient_dim = 0;

  int total_dim() const { return static_cast<int>(G_bar.cols()); }
  int rows() const { return static_cast<int>(G_bar.rows()); }
};

ImplicitPolytope as_implicit(const Polyhedron& P);

struct SumTerm {
  Eigen::MatrixXd P;  // n × m_i
  Polyhedron set;     // in R^{m_i}
};

// ⊕ P_i Γ_i lifted to (x, y_1, ...): rows x - ΣP_i y_i <= 0, -x + ΣP_i y_i <= 0,
// then the blocks F_i y_i <= f_i.
ImplicitPolytope minkowski_sum_implicit(const std::vector<SumTerm>& terms);

bool member_implicit(const ImplicitPolytope& S, const Eigen::VectorXd& x,
                     const SolverConfig& config = {});

// max c·x over S; +inf when unbounded. Throws std::domain_error when S is empty.
double support_implicit(const ImplicitPolytope& S, const Eigen::VectorXd& c,
                        const SolverConfig& config = {});

}  // namespace invset
