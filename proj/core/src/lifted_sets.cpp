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

#include "invset/lifted_sets.hpp"

#include <stdexcept>

namespace invset {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// Adds coefficient block C (rows × cols) at (row0, col0).
void add_block(RowBuilder& rb, int row0, int col0, const Eigen::MatrixXd& C) {
  for (Eigen::Index r = 0; r < C.rows(); ++r) {
    for (Eigen::Index c = 0; c < C.cols(); ++c) {
      rb.add(row0 + static_cast<int>(r), col0 + static_cast<int>(c), C(r, c));
    }
  }
}

int add_rows(RowBuilder& rb, Eigen::Index count, double rhs = 0.0) {
  const int first = rb.rows();
  for (Eigen::Index i = 0; i < count; ++i) rb.add_row(rhs);
  return first;
}

}  // namespace

void TrajectorySetSpec::validate() const {
  sys.validate();
  require(omega.dim() == sys.n(), "TrajectorySetSpec: dim(Ω) != n");
  require(u_set.dim() == sys.m(), "TrajectorySetSpec: dim(U) != m");
  require(omega.contains_origin(), "TrajectorySetSpec: 0 ∉ Ω");
  require(u_set.contains_origin(), "TrajectorySetSpec: 0 ∉ U");
  if (x_set) {
    require(x_set->dim() == sys.n(), "TrajectorySetSpec: dim(X) != n");
    require(x_set->contains_origin(), "TrajectorySetSpec: 0 ∉ X");
  }
  require(terminal_scale >= 0.0 && input_scale >= 0.0 && state_scale >= 0.0,
          "TrajectorySetSpec: scales must be >= 0");
}

SplitLiftedSet lift_k_step(const TrajectorySetSpec& spec, int k) {
  spec.validate();
  require(k >= 1, "lift_k_step: k must be >= 1");
  const int n = spec.sys.n();
  const int m = spec.sys.m();
  const MatrixPowers P(spec.sys.A, k);
  const Eigen::MatrixXd& B = spec.sys.B;
  const Polyhedron& Om = spec.omega;
  const Polyhedron& U = spec.u_set;
  auto u_col = [&](int j) { return n + (j - 1) * m; };

  RowBuilder rb(n + k * m);
  std::vector<double> term, state, input;
  auto push_rhs = [&](Eigen::Index count, const Eigen::VectorXd& t, const Eigen::VectorXd& s,
                      const Eigen::VectorXd& in) {
    for (Eigen::Index i = 0; i < count; ++i) {
      term.push_back(t.size() ? t[i] : 0.0);
      state.push_back(s.size() ? s[i] : 0.0);
      input.push_back(in.size() ? in[i] : 0.0);
    }
  };
  const Eigen::VectorXd none;

  const int rt = add_rows(rb, Om.rows());
  add_block(rb, rt, 0, Om.H() * P[k]);
  for (int l = 0; l < k; ++l) add_block(rb, rt, u_col(l + 1), Om.H() * P[k - 1 - l] * B);
  push_rhs(Om.rows(), Om.h(), none, none);

  if (spec.x_set) {
    const Polyhedron& X = *spec.x_set;
    for (int j = 0; j < k; ++j) {
      const int rs = add_rows(rb, X.rows());
      add_block(rb, rs, 0, X.H() * P[j]);
      for (int l = 0; l < j; ++l) add_block(rb, rs, u_col(l + 1), X.H() * P[j - 1 - l] * B);
      push_rhs(X.rows(), none, X.h(), none);
    }
  }
  for (int j = 1; j <= k; ++j) {
    const int ri = add_rows(rb, U.rows());
    add_block(rb, ri, u_col(j), U.H());
    push_rhs(U.rows(), none, none, U.h());
  }

  SplitLiftedSet out;
  auto to_vec = [](const std::vector<double>& v) {
    return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
  };
  out.rhs_terminal = to_vec(term);
  out.rhs_state = to_vec(state);
  out.rhs_input = to_vec(input);
  out.set.G_bar = rb.matrix();
  out.set.g_bar = spec.terminal_scale * out.rhs_terminal + spec.state_scale * out.rhs_state +
                  spec.input_scale * out.rhs_input;
  out.set.ambient_dim = n;
  return out;
}

int UnionLayout::z(int k) const { return n + (k - 1) * n + (k - 1) * k / 2 * m; }
int UnionLayout::v(int j, int k) const { return z(k) + n + (j - 1) * m; }
int UnionLayout::lambda(int k) const { return z(N + 1) + (k - 1); }

UnionLayout union_layout(const TrajectorySetSpec& spec, int N) {
  require(N >= 1, "union_layout: N must be >= 1");
  return {spec.sys.n(), spec.sys.m(), N};
}

ImplicitPolytope lift_horizon_union(const TrajectorySetSpec& spec, int N) {
  spec.validate();
  const UnionLayout L = union_layout(spec, N);
  const int n = L.n;
  const MatrixPowers P(spec.sys.A, N);
  const Eigen::MatrixXd& B = spec.sys.B;
  const Polyhedron& Om = spec.omega;
  const Polyhedron& U = spec.u_set;

  RowBuilder rb(L.total());
  const int rx = add_rows(rb, 2 * n);
  for (int i = 0; i < n; ++i) {
    rb.add(rx + i, i, 1.0);
    rb.add(rx + n + i, i, -1.0);
    for (int k = 1; k <= N; ++k) {
      rb.add(rx + i, L.z(k) + i, -1.0);
      rb.add(rx + n + i, L.z(k) + i, 1.0);
    }
  }

  for (int k = 1; k <= N; ++k) {
    const int rt = add_rows(rb, Om.rows());
    add_block(rb, rt, L.z(k), Om.H() * P[k]);
    for (int l = 0; l < k; ++l) add_block(rb, rt, L.v(l + 1, k), Om.H() * P[k - 1 - l] * B);
    add_block(rb, rt, L.lambda(k), -spec.terminal_scale * Om.h());

    if (spec.x_set) {
      const Polyhedron& X = *spec.x_set;
      for (int j = 0; j < k; ++j) {
        const int rs = add_rows(rb, X.rows());
        add_block(rb, rs, L.z(k), X.H() * P[j]);
        for (int l = 0; l < j; ++l) add_block(rb, rs, L.v(l + 1, k), X.H() * P[j - 1 - l] * B);
        add_block(rb, rs, L.lambda(k), -spec.state_scale * X.h());
      }
    }
    for (int j = 1; j <= k; ++j) {
      const int ri = add_rows(rb, U.rows());
      add_block(rb, ri, L.v(j, k), U.H());
      add_block(rb, ri, L.lambda(k), -spec.input_scale * U.h());
    }
  }

  for (int k = 1; k <= N; ++k) rb.add(rb.add_row(0.0), L.lambda(k), -1.0);
  const int rs = rb.add_row(1.0);
  for (int k = 1; k <= N; ++k) rb.add(rs, L.lambda(k), 1.0);

  return {rb.matrix(), rb.rhs(), n};
}

}  // namespace invset
