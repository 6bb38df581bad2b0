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

#include "invset/polyhedra.hpp"
#include "invset/system.hpp"

namespace invset::oracle2d {

inline constexpr double kVertexTol = 1e-9;
inline constexpr double kDefaultClip = 1e4;

using Point = Eigen::Vector2d;

// Convex polygon with counterclockwise vertices and no repeated or collinear
// vertices. 0, 1 and 2 vertices encode the empty set, a point and a segment.
class Polygon2D {
 public:
  Polygon2D() = default;

  static Polygon2D hull(std::vector<Point> points);
  // P ∩ [-clip, clip]²; P must be 2-D.
  static Polygon2D from_hrep(const Polyhedron& P, double clip = kDefaultClip);
  static Polygon2D box(double lo_x, double hi_x, double lo_y, double hi_y);

  const std::vector<Point>& vertices() const { return v_; }
  size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }

  // Unit-normal facets; segments and points get a degenerate H-form.
  Polyhedron to_hrep() const;
  double area() const;
  // -inf for the empty set.
  double support(const Point& c) const;
  bool contains(const Point& x, double tol = kVertexTol) const;
  // Negative inside, positive outside, zero on the boundary.
  double signed_distance(const Point& x) const;

  Polygon2D clip(const Point& a, double b) const;  // ∩ {a·x <= b}
  Polygon2D intersect(const Polyhedron& P) const;
  Polygon2D transformed(const Eigen::Matrix2d& M) const;
  Polygon2D scaled(double s) const;

 private:
  std::vector<Point> v_;
};

Polygon2D minkowski_sum_2d(const Polygon2D& P, const Polygon2D& Q);
Polygon2D convex_hull_union(const std::vector<Polygon2D>& polys);

// {x : A x ∈ P} ∩ [-clip, clip]².
Polygon2D preimage_2d(const Eigen::Matrix2d& A, const Polygon2D& P, double clip = kDefaultClip);

// {M u : u ∈ U} for M 2×m with m <= 2.
Polygon2D linear_image(const Eigen::MatrixXd& M, const Polyhedron& U);

bool contains_by_vertices(const Polygon2D& inner, const Polygon2D& outer, double tol = kVertexTol);

// A^{-k}(αΩ ⊕ ⊕_{i<k} (-A^i B U)) via explicit sums, then the H-form preimage.
Polygon2D explicit_omega_k(const LinearSystem& sys, const Polyhedron& Omega, const Polyhedron& U,
                           int k, double alpha = 1.0, double clip = kDefaultClip);
// The same set through Ω_{j+1} = A^{-1}(Ω_j ⊕ (-BU)), Ω_0 = αΩ.
Polygon2D explicit_omega_k_recursive(const LinearSystem& sys, const Polyhedron& Omega,
                                     const Polyhedron& U, int k, double alpha = 1.0,
                                     double clip = kDefaultClip);
// Hull of Ω_1^α .. Ω_N^α.
Polygon2D explicit_omega_inf(const LinearSystem& sys, const Polyhedron& Omega, const Polyhedron& U,
                             int N, double alpha = 1.0, double clip = kDefaultClip);

// S_0 = σΩ, S_{j+1} = X ∩ A^{-1}(S_j ⊕ (-BU)); returns S_k.
Polygon2D explicit_constrained_omega_k(const LinearSystem& sys, const Polyhedron& Omega,
                                       const Polyhedron& X, const Polyhedron& U, int k,
                                       double sigma = 1.0, double clip = kDefaultClip);
Polygon2D explicit_constrained_omega_inf(const LinearSystem& sys, const Polyhedron& Omega,
                                         const Polyhedron& X, const Polyhedron& U, int N,
                                         double sigma = 1.0, double clip = kDefaultClip);

struct OuterApproximation {
  std::vector<Polygon2D> sets;  // sets[0] = Σ_0
  bool truncated = false;       // an iterate became empty
};

// Σ_{k+1} = Σ_0 ∩ A^{-1}(Σ_k ⊕ (-BU)).
OuterApproximation outer_approx_sequence(const LinearSystem& sys, const Polyhedron& U,
                                         const Polygon2D& Sigma0, int steps);

// count directions (cos θ, sin θ) with θ = 2πi/count.
std::vector<Point> unit_directions(int count);

}  // namespace invset::oracle2d
