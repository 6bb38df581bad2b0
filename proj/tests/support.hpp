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

// Shared fixtures for the test suites: the planar example data written out
// independently of the CLI generators, and seeded random generators.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "invset/oracle2d.hpp"
#include "invset/polyhedra.hpp"
#include "invset/system.hpp"

namespace invset::testing {

inline Polyhedron interval(double lo, double hi) {
  return box(Eigen::VectorXd::Constant(1, lo), Eigen::VectorXd::Constant(1, hi));
}

inline LinearSystem ex1_system() {
  return {(Eigen::Matrix2d() << 1.2, 1.0, 0.0, 1.2).finished(), Eigen::Vector2d(0.5, 0.3)};
}

inline LinearSystem ex2_system() {
  return {(Eigen::Matrix2d() << 1.2, 1.0, 0.0, 0.0).finished(), Eigen::Vector2d(0.5, 0.3)};
}

inline Polyhedron ex_omega() { return unit_box(2); }
inline Polyhedron ex_u() { return interval(-2.0, 2.0); }
inline Polyhedron ex3_x() { return box(Eigen::Vector2d(-10.0, -1.0), Eigen::Vector2d(5.0, 2.0)); }

// Polygon {x : a_i·x <= b_i} with k random unit normals and offsets in [lo, hi];
// k >= 3 normals jittered by at most 0.2 of the spacing leave every angular gap
// below π, so the polygon is bounded; b_i > 0 keeps 0 inside.
inline Polyhedron random_polygon(std::mt19937_64& rng, int k, double lo, double hi) {
  std::uniform_real_distribution<double> jitter(-0.2, 0.2);
  std::uniform_real_distribution<double> offset(lo, hi);
  Eigen::MatrixXd H(k, 2);
  Eigen::VectorXd h(k);
  for (int i = 0; i < k; ++i) {
    const double t = 2.0 * std::numbers::pi * (i + 0.5 + jitter(rng)) / k;
    H.row(i) << std::cos(t), std::sin(t);
    h[i] = offset(rng);
  }
  return Polyhedron(H, h);
}

inline LinearSystem random_planar_system(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> entry(-1.5, 1.5);
  LinearSystem s{Eigen::MatrixXd(2, 2), Eigen::MatrixXd(2, 1)};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) s.A(i, j) = entry(rng);
    s.B(i, 0) = entry(rng);
  }
  return s;
}

// Minimum support slack h_outer(d) - h_inner(d) over 64 evenly spaced directions.
inline double support_slack(const oracle2d::Polygon2D& inner, const oracle2d::Polygon2D& outer) {
  double worst = std::numeric_limits<double>::infinity();
  for (const oracle2d::Point& d : oracle2d::unit_directions(64)) {
    worst = std::min(worst, outer.support(d) - inner.support(d));
  }
  return worst;
}

}  // namespace invset::testing
