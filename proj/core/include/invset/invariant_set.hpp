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

#include <functional>
#include <optional>
#include <vector>

#include "invset/lifted_sets.hpp"
#include "invset/lp.hpp"
#include "invset/polyhedra.hpp"
#include "invset/system.hpp"

namespace invset {

// Ω∞^α = co(∪_{k=1..N} Ω_k^α) with Ω_k^α = A^{-k}(αΩ ⊕ ⊕_{i<k} (-A^i B U)).
// The lifted description holds for singular A as well.
struct InvariantSetSpec {
  LinearSystem sys;
  Polyhedron omega;
  Polyhedron u_set;
  int N = 1;
  double alpha = 1.0;

  void validate() const;
  TrajectorySetSpec trajectory() const;
  ImplicitPolytope lifted() const;
  // n + N n + N(N+1)/2 m + N.
  int lifted_dim() const;
};

bool membership(const InvariantSetSpec& spec, const Eigen::VectorXd& x,
                const SolverConfig& config = {});

// +inf when unbounded in direction c.
double support(const InvariantSetSpec& spec, const Eigen::VectorXd& c,
               const SolverConfig& config = {});

struct InvarianceReport {
  int checked = 0;
  std::vector<int> failures;           // indices into the sample set
  std::vector<Eigen::VectorXd> inputs;  // witness u per point (empty on failure)

  bool ok() const { return failures.empty(); }
};

// For each x: is there u ∈ U with A x + B u ∈ S (and, when X is given, x ∈ X)?
InvarianceReport verify_control_invariance(const ImplicitPolytope& S, const LinearSystem& sys,
                                           const Polyhedron& U,
                                           const std::vector<Eigen::VectorXd>& points,
                                           const SolverConfig& config = {},
                                           const Polyhedron* X = nullptr);

InvarianceReport verify_control_invariance(const InvariantSetSpec& spec,
                                           const std::vector<Eigen::VectorXd>& points,
                                           const SolverConfig& config = {});

using MembershipPredicate = std::function<bool(const Eigen::VectorXd&)>;

// Bisection on r ∈ [0, r_hi] along the ray {r v}. Requires member(0) and
// !member(r_hi v); returns the last r known to be inside.
double ray_boundary(const MembershipPredicate& member, const Eigen::VectorXd& v, double r_hi,
                    int iters);

// max r with r v ∈ S as a single LP; +inf when the ray stays inside.
double ray_extent(const ImplicitPolytope& S, const Eigen::VectorXd& v,
                  const SolverConfig& config = {});

}  // namespace invset
