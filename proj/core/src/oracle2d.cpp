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

#include "invset/oracle2d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace invset::oracle2d {

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

double scale_of(const std::vector<Point>& pts) {
  double s = 1.0;
  for (const Point& p : pts) s = std::max(s, p.cwiseAbs().maxCoeff());
  return s;
}

double segment_distance(const Point& x, const Point& p, const Point& q) {
  const Point d = q - p;
  const double len2 = d.squaredNorm();
  if (len2 == 0.0) return (x - p).norm();
  const double t = std::clamp((x - p).dot(d) / len2, 0.0, 1.0);
  return (x - (p + t * d)).norm();
}

}  // namespace

Polygon2D Polygon2D::hull(std::vector<Point> pts) {
  for (const Point& p : pts) {
    if (!p.allFinite()) throw std::invalid_argument("Polygon2D::hull: non-finite point");
  }
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  const double merge = 1e-12 * scale_of(pts);
  std::vector<Point> uniq;
  for (const Point& p : pts) {
    if (uniq.empty() || (p - uniq.back()).cwiseAbs().maxCoeff() > merge) uniq.push_back(p);
  }
  Polygon2D out;
  if (uniq.size() <= 1) {
    out.v_ = std::move(uniq);
    return out;
  }

  // Andrew's monotone chain; near-collinear turns (|sin| < 1e-12) are dropped.
  auto turns_left = [](const Point& o, const Point& a, const Point& b) {
    return cross(o, a, b) > 1e-12 * (a - o).norm() * (b - o).norm();
  };
  std::vector<Point> h(2 * uniq.size());
  size_t k = 0;
  for (const Point& p : uniq) {
    while (k >= 2 && !turns_left(h[k - 2], h[k - 1], p)) --k;
    h[k++] = p;
  }
  const size_t lower = k + 1;
  for (size_t i = uniq.size() - 1; i-- > 0;) {
    while (k >= lower && !turns_left(h[k - 2], h[k - 1], uniq[i])) --k;
    h[k++] = uniq[i];
  }
  h.resize(k - 1);
  // Merge vertices that ended up adjacent within tolerance.
  std::vector<Point> clean;
  for (const Point& p : h) {
    if (clean.empty() || (p - clean.back()).cwiseAbs().maxCoeff() > merge) clean.push_back(p);
  }
  while (clean.size() > 1 && (clean.front() - clean.back()).cwiseAbs().maxCoeff() <= merge) {
    clean.pop_back();
  }
  out.v_ = std::move(clean);
  return out;
}

Polygon2D Polygon2D::box(double lo_x, double hi_x, double lo_y, double hi_y) {
  return hull({{lo_x, lo_y}, {hi_x, lo_y}, {hi_x, hi_y}, {lo_x, hi_y}});
}

Polygon2D Polygon2D::from_hrep(const Polyhedron& P, double clip) {
  if (P.dim() != 2) throw std::invalid_argument("Polygon2D::from_hrep: polyhedron is not 2-D");
  Polygon2D poly = box(-clip, clip, -clip, clip);
  for (int r = 0; r < P.rows() && !poly.empty(); ++r) {
    const Point a = P.H().row(r).transpose();
    const double norm = a.norm();
    if (norm == 0.0) {
      if (P.h()[r] < -kVertexTol) return {};
      continue;
    }
    poly = poly.clip(a / norm, P.h()[r] / norm);
  }
  return poly;
}

Polyhedron Polygon2D::to_hrep() const {
  if (v_.empty()) return Polyhedron::empty(2);
  if (v_.size() == 1) return invset::box(v_[0], v_[0]);
  std::vector<std::pair<Point, double>> rows;
  if (v_.size() == 2) {
    const Point d = (v_[1] - v_[0]).normalized();
    const Point nrm(d.y(), -d.x());
    rows = {{nrm, nrm.dot(v_[0])}, {-nrm, -nrm.dot(v_[0])}, {d, d.dot(v_[1])}, {-d, -d.dot(v_[0])}};
  } else {
    for (size_t i = 0; i < v_.size(); ++i) {
      const Point d = v_[(i + 1) % v_.size()] - v_[i];
      const Point nrm = Point(d.y(), -d.x()).normalized();
      rows.emplace_back(nrm, nrm.dot(v_[i]));
    }
  }
  Eigen::MatrixXd H(static_cast<Eigen::Index>(rows.size()), 2);
  Eigen::VectorXd h(static_cast<Eigen::Index>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    H.row(static_cast<Eigen::Index>(i)) = rows[i].first.transpose();
    h[static_cast<Eigen::Index>(i)] = rows[i].second;
  }
  return Polyhedron(std::move(H), std::move(h));
}

double Polygon2D::area() const {
  if (v_.size() < 3) return 0.0;
  double twice = 0.0;
  for (size_t i = 0; i < v_.size(); ++i) {
    const Point& p = v_[i];
    const Point& q = v_[(i + 1) % v_.size()];
    twice += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * twice;
}

double Polygon2D::support(const Point& c) const {
  double best = -kInf;
  for (const Point& p : v_) best = std::max(best, c.dot(p));
  return best;
}

bool Polygon2D::contains(const Point& x, double tol) const { return signed_distance(x) <= tol; }

double Polygon2D::signed_distance(const Point& x) const {
  if (v_.empty()) return kInf;
  if (v_.size() == 1) return (x - v_[0]).norm();
  if (v_.size() == 2) return segment_distance(x, v_[0], v_[1]);
  double worst = -kInf;
  for (size_t i = 0; i < v_.size(); ++i) {
    const Point d = v_[(i + 1) % v_.size()] - v_[i];
    const Point nrm = Point(d.y(), -d.x()).normalized();
    worst = std::max(worst, nrm.dot(x - v_[i]));
  }
  if (worst <= 0.0) return worst;
  double dist = kInf;
  for (size_t i = 0; i < v_.size(); ++i) {
    dist = std::min(dist, segment_distance(x, v_[i], v_[(i + 1) % v_.size()]));
  }
  return dist;
}

Polygon2D Polygon2D::clip(const Point& a, double b) const {
  if (v_.empty()) return {};
  const double eps = 1e-12 * (std::abs(b) + a.norm() * scale_of(v_));
  std::vector<double> s(v_.size());
  for (size_t i = 0; i < v_.size(); ++i) s[i] = a.dot(v_[i]) - b;
  if (v_.size() == 1) return s[0] <= eps ? *this : Polygon2D{};

  std::vector<Point> kept;
  for (size_t i = 0; i < v_.size(); ++i) {
    const size_t j = (i + 1) % v_.size();
    if (s[i] <= eps) kept.push_back(v_[i]);
    if ((s[i] < -eps && s[j] > eps) || (s[i] > eps && s[j] < -eps)) {
      const double t = s[i] / (s[i] - s[j]);
      kept.push_back(v_[i] + t * (v_[j] - v_[i]));
    }
  }
  return hull(std::move(kept));
}

Polygon2D Polygon2D::intersect(const Polyhedron& P) const {
  if (P.dim() != 2) throw std::invalid_argument("Polygon2D::intersect: polyhedron is not 2-D");
  Polygon2D out = *this;
  for (int r = 0; r < P.rows() && !out.empty(); ++r) {
    const Point a = P.H().row(r).transpose();
    const double norm = a.norm();
    if (norm == 0.0) {
      if (P.h()[r] < -kVertexTol) return {};
      continue;
    }
    out = out.clip(a / norm, P.h()[r] / norm);
  }
  return out;
}

Polygon2D Polygon2D::transformed(const Eigen::Matrix2d& M) const {
  std::vector<Point> pts;
  pts.reserve(v_.size());
  for (const Point& p : v_) pts.push_back(M * p);
  return hull(std::move(pts));
}

Polygon2D Polygon2D::scaled(double s) const { return transformed(s * Eigen::Matrix2d::Identity()); }

Polygon2D minkowski_sum_2d(const Polygon2D& P, const Polygon2D& Q) {
  if (P.empty() || Q.empty()) return {};
  if (P.size() < 3 || Q.size() < 3) {
    std::vector<Point> pts;
    for (const Point& p : P.vertices())
      for (const Point& q : Q.vertices()) pts.push_back(p + q);
    return Polygon2D::hull(std::move(pts));
  }
  // Merge the edge sequences in angular order, both starting at the lowest vertex.
  auto rotated = [](const std::vector<Point>& v) {
    const auto it = std::min_element(v.begin(), v.end(), [](const Point& a, const Point& b) {
      return a.y() < b.y() || (a.y() == b.y() && a.x() < b.x());
    });
    std::vector<Point> r(it, v.end());
    r.insert(r.end(), v.begin(), it);
    r.push_back(r[0]);
    r.push_back(r[1]);
    return r;
  };
  const std::vector<Point> p = rotated(P.vertices());
  const std::vector<Point> q = rotated(Q.vertices());
  std::vector<Point> out;
  size_t i = 0;
  size_t j = 0;
  while (i < p.size() - 2 || j < q.size() - 2) {
    out.push_back(p[i] + q[j]);
    const Point ep = p[i + 1] - p[i];
    const Point eq = q[j + 1] - q[j];
    const double c = ep.x() * eq.y() - ep.y() * eq.x();
    if (c >= 0.0 && i < p.size() - 2) ++i;
    if (c <= 0.0 && j < q.size() - 2) ++j;
  }
  return Polygon2D::hull(std::move(out));
}

Polygon2D convex_hull_union(const std::vector<Polygon2D>& polys) {
  if (polys.empty()) throw std::invalid_argument("convex_hull_union: empty sequence");
  std::vector<Point> pts;
  for (const Polygon2D& p : polys) pts.insert(pts.end(), p.vertices().begin(), p.vertices().end());
  return Polygon2D::hull(std::move(pts));
}

Polygon2D preimage_2d(const Eigen::Matrix2d& A, const Polygon2D& P, double clip) {
  if (P.empty()) return {};
  return Polygon2D::from_hrep(preimage(A, P.to_hrep()), clip);
}

Polygon2D linear_image(const Eigen::MatrixXd& M, const Polyhedron& U) {
  if (M.rows() != 2 || M.cols() != U.dim()) {
    throw std::invalid_argument("linear_image: M must be 2 × dim(U)");
  }
  if (U.dim() == 0) return Polygon2D::hull({Point::Zero()});
  std::vector<Point> pts;
  if (U.dim() == 1) {
    double lo = -kInf;
    double hi = kInf;
    for (int r = 0; r < U.rows(); ++r) {
      const double a = U.H()(r, 0);
      const double b = U.h()[r];
      if (a > 0.0) hi = std::min(hi, b / a);
      if (a < 0.0) lo = std::max(lo, b / a);
      if (a == 0.0 && b < 0.0) return {};
    }
    if (lo > hi) return {};
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw std::invalid_argument("linear_image: U must be bounded");
    }
    pts = {M.col(0) * lo, M.col(0) * hi};
  } else if (U.dim() == 2) {
    constexpr double kFar = 1e9;
    // The far clip only detects unboundedness; the tight one keeps vertices exact.
    const Polygon2D far = Polygon2D::from_hrep(U, kFar);
    double reach = 0.0;
    for (const Point& p : far.vertices()) reach = std::max(reach, p.cwiseAbs().maxCoeff());
    if (reach >= kFar) throw std::invalid_argument("linear_image: U must be bounded");
    const Polygon2D tight = Polygon2D::from_hrep(U, 2.0 * reach + 1.0);
    for (const Point& p : tight.vertices()) pts.push_back(M * p);
  } else {
    throw std::invalid_argument("linear_image: dim(U) > 2 is outside the 2-D oracle");
  }
  return Polygon2D::hull(std::move(pts));
}

bool contains_by_vertices(const Polygon2D& inner, const Polygon2D& outer, double tol) {
  if (inner.empty()) return true;
  const Polyhedron H = outer.to_hrep();
  for (const Point& p : inner.vertices()) {
    if (!H.contains(p, tol)) return false;
  }
  return true;
}

namespace {

void require_planar(const LinearSystem& sys, const Polyhedron& Omega, const Polyhedron& U) {
  sys.validate();
  if (sys.n() != 2 || Omega.dim() != 2 || U.dim() != sys.m()) {
    throw std::invalid_argument("oracle2d: needs n = 2 and matching set dimensions");
  }
}

Polygon2D seed(const Polyhedron& Omega, double scale_factor) {
  return Polygon2D::from_hrep(Omega).scaled(scale_factor);
}

}  // namespace

Polygon2D explicit_omega_k(const LinearSystem& sys, const Polyhedron& Omega, const Polyhedron& U,
                           int k, double alpha, double clip) {
  require_planar(sys, Omega, U);
  if (k < 1) throw std::invalid_argument("explicit_omega_k: k must be >= 1");
  const MatrixPowers P(sys.A, k);
  Polygon2D S = seed(Omega, alpha);
  for (int i = 0; i < k; ++i) S = minkowski_sum_2d(S, linear_image(-P[i] * sys.B, U));
  return preimage_2d(P[k], S, clip);
}

Polygon2D explicit_omega_k_recursive(const LinearSystem& sys, const Polyhedron& Omega,
                                     const Polyhedron& U, int k, double alpha, double clip) {
  require_planar(sys, Omega, U);
  if (k < 1) throw std::invalid_argument("explicit_omega_k_recursive: k must be >= 1");
  const Polygon2D minus_BU = linear_image(-sys.B, U);
  Polygon2D S = seed(Omega, alpha);
  for (int j = 0; j < k; ++j) S = preimage_2d(sys.A, minkowski_sum_2d(S, minus_BU), clip);
  return S;
}

Polygon2D explicit_omega_inf(const LinearSystem& sys, const Polyhedron& Omega, const Polyhedron& U,
                             int N, double alpha, double clip) {
  std::vector<Polygon2D> parts;
  for (int k = 1; k <= N; ++k) parts.push_back(explicit_omega_k(sys, Omega, U, k, alpha, clip));
  return convex_hull_union(parts);
}

Polygon2D explicit_constrained_omega_k(const LinearSystem& sys, const Polyhedron& Omega,
                                       const Polyhedron& X, const Polyhedron& U, int k,
                                       double sigma, double clip) {
  require_planar(sys, Omega, U);
  if (k < 1) throw std::invalid_argument("explicit_constrained_omega_k: k must be >= 1");
  const Polygon2D minus_BU = linear_image(-sys.B, U);
  Polygon2D S = seed(Omega, sigma);
  for (int j = 0; j < k; ++j) {
    S = preimage_2d(sys.A, minkowski_sum_2d(S, minus_BU), clip).intersect(X);
  }
  return S;
}

Polygon2D explicit_constrained_omega_inf(const LinearSystem& sys, const Polyhedron& Omega,
                                         const Polyhedron& X, const Polyhedron& U, int N,
                                         double sigma, double clip) {
  std::vector<Polygon2D> parts;
  for (int k = 1; k <= N; ++k) {
    parts.push_back(explicit_constrained_omega_k(sys, Omega, X, U, k, sigma, clip));
  }
  return convex_hull_union(parts);
}

OuterApproximation outer_approx_sequence(const LinearSystem& sys, const Polyhedron& U,
                                         const Polygon2D& Sigma0, int steps) {
  sys.validate();
  if (sys.n() != 2) throw std::invalid_argument("outer_approx_sequence: needs n = 2");
  const Polygon2D minus_BU = linear_image(-sys.B, U);
  const Polyhedron sigma0_h = Sigma0.to_hrep();
  const double clip = 2.0 * scale_of(Sigma0.vertices()) + 1.0;
  OuterApproximation out;
  out.sets.push_back(Sigma0);
  for (int k = 0; k < steps; ++k) {
    Polygon2D next =
        preimage_2d(sys.A, minkowski_sum_2d(out.sets.back(), minus_BU), clip).intersect(sigma0_h);
    if (next.empty()) {
      out.truncated = true;
      break;
    }
    out.sets.push_back(std::move(next));
  }
  return out;
}

std::vector<Point> unit_directions(int count) {
  std::vector<Point> dirs;
  dirs.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = 2.0 * std::numbers::pi * i / count;
    dirs.emplace_back(std::cos(t), std::sin(t));
  }
  return dirs;
}

}  // namespace invset::oracle2d
