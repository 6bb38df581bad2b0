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

#include "invset/polyhedra.hpp"
#include "invset/system.hpp"

namespace invset {

// Trajectories of x⁺ = Ax + Bu that start at x, apply u_{j+1} at step j,
// stay in state_scale·X for steps 0..k-1 (when X is given), use inputs in
// input_scale·U and end in terminal_scale·Ω at step k.
struct TrajectorySetSpec {
  LinearSystem sys;
  Polyhedron omega;
  Polyhedron u_set;
  std::optional<Polyhedron> x_set;
  double terminal_scale = 1.0;
  double input_scale = 1.0;
  double state_scale = 1.0;

  void validate() const;
};

// A lifted set whose right-hand side is split by row family:
// g_bar = terminal_scale·rhs_terminal + state_scale·rhs_state + input_scale·rhs_input.
struct SplitLiftedSet {
  ImplicitPolytope set;
  Eigen::VectorXd rhs_terminal;
  Eigen::VectorXd rhs_state;
  Eigen::VectorXd rhs_input;
};

// Ω_k over (x, u_1, ..., u_k): n + k·m coordinates. Rows are ordered
// terminal block, state blocks j = 0..k-1, input blocks j = 1..k.
SplitLiftedSet lift_k_step(const TrajectorySetSpec& spec, int k);

// Column offsets of the horizon-union lift (x, z_1, v_{·,1}, ..., z_N, v_{·,N}, λ).
struct UnionLayout {
  int n = 0;
  int m = 0;
  int N = 0;

  int z(int k) const;          // k = 1..N
  int v(int j, int k) const;   // input j = 1..k of summand k
  int lambda(int k) const;     // k = 1..N
  int total() const { return lambda(N) + 1; }
};

// co(∪_{k=1..N} Ω_k) as the projection of
//   x = Σ z_k,  per-k trajectory rows with right-hand sides λ_k·(scaled data),
//   λ >= 0,  Σ λ_k <= 1.
// Σλ <= 1 describes the same set as Σλ = 1 because 0 lies in every Ω_k.
// Lifted dimension n + N·n + N(N+1)/2·m + N.
ImplicitPolytope lift_horizon_union(const TrajectorySetSpec& spec, int N);
UnionLayout union_layout(const TrajectorySetSpec& spec, int N);

}  // namespace invset
