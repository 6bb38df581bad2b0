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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "invset/invariant_set.hpp"
#include "invset/oracle2d.hpp"
#include "support.hpp"

namespace invset {
namespace {

using oracle2d::Point;
using oracle2d::Polygon2D;
using testing::ex1_system;
using testing::ex2_system;
using testing::ex_omega;
using testing::ex_u;

constexpr double kBeta5 = 0.73093312290392565;
constexpr double kBeta10Ex2 = 0.2693040880161009;

InvariantSetSpec ex1_spec(int N = 5) { return {ex1_system(), ex_omega(), ex_u(), N, 1.0 / kBeta5}; }

std::vector<Eigen::VectorXd> as_points(const Polygon2D& P) {
  std::vector<Eigen::VectorXd> out;
  for (const Point& v : P.vertices()) out.emplace_back(v);
  return out;
}

TEST(InvariantSet, LiftedDimension) {
  EXPECT_EQ(ex1_spec(5).lifted_dim(), 2 + 5 * 2 + 15 + 5);
  EXPECT_EQ(ex1_spec(1).lifted_dim(), 2 + 2 + 1 + 1);
  EXPECT_EQ(ex1_spec(5).lifted().total_dim(), ex1_spec(5).lifted_dim());
}

TEST(InvariantSet, RejectsBadSpecs) {
  InvariantSetSpec s = ex1_spec();
  s.N = 0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = ex1_spec();
  s.alpha = 0.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  EXPECT_THROW(support(ex1_spec(), Eigen::Vector2d::Zero()), std::invalid_argument);
}

TEST(InvariantSet, MembershipMatchesOracleOnGrid) {
  const InvariantSetSpec spec = ex1_spec();
  const Polygon2D P = oracle2d::explicit_omega_inf(spec.sys, spec.omega, spec.u_set, spec.N, spec.alpha);
  int compared = 0;
  for (int i = 0; i < 21; ++i) {
    for (int j = 0; j < 21; ++j) {
      const Point x(-6.0 + 0.6 * i, -3.0 + 0.3 * j);
      const double sd = P.signed_distance(x);
      if (std::abs(sd) < 1e-5) continue;
      EXPECT_EQ(membership(spec, x), sd < 0.0) << x.transpose();
      ++compared;
    }
  }
  EXPECT_GT(compared, 400);
}

TEST(InvariantSet, SupportMatchesOracle) {
  for (int N : {1, 3, 5}) {
    const InvariantSetSpec spec = ex1_spec(N);
    const Polygon2D P = oracle2d::explicit_omega_inf(spec.sys, spec.omega, spec.u_set, N, spec.alpha);
    for (const Point& d : oracle2d::unit_directions(64)) {
      const double h = P.support(d);
      EXPECT_NEAR(support(spec, d), h, 1e-6 * (1.0 + std::abs(h))) << "N " << N;
    }
  }
}

TEST(InvariantSet, SingularDynamicsGiveUnboundedStrip) {
  const InvariantSetSpec spec{ex2_system(), ex_omega(), ex_u(), 10, 1.0 / kBeta10Ex2};
  // A x depends on x only through 1.2 x1 + x2, so the set is a strip along (1, -1.2).
  EXPECT_EQ(support(spec, Eigen::Vector2d(1.0, 0.0)), kInf);
  EXPECT_EQ(ray_extent(spec.lifted(), Eigen::Vector2d(1.0, -1.2)), kInf);
  const double width = support(spec, Eigen::Vector2d(1.2, 1.0));
  EXPECT_TRUE(std::isfinite(width));
  const Polygon2D P = oracle2d::explicit_omega_inf(spec.sys, spec.omega, spec.u_set, 10, spec.alpha);
  EXPECT_NEAR(width, P.support({1.2, 1.0}), 1e-6 * (1.0 + width));
}

TEST(InvariantSet, OracleVerticesAreControlInvariant) {
  for (const InvariantSetSpec& spec :
       {ex1_spec(5), InvariantSetSpec{ex2_system(), ex_omega(), ex_u(), 10, 1.0 / kBeta10Ex2}}) {
    const Polygon2D P = oracle2d::explicit_omega_inf(spec.sys, spec.omega, spec.u_set, spec.N, spec.alpha)
                            .intersect(scale(unit_box(2), 10.0));
    std::vector<Eigen::VectorXd> pts = as_points(P);
    for (size_t i = 0; i < P.size(); ++i) {
      pts.emplace_back(0.5 * (P.vertices()[i] + P.vertices()[(i + 1) % P.size()]));
    }
    const InvarianceReport rep = verify_control_invariance(spec, pts);
    EXPECT_EQ(rep.checked, static_cast<int>(pts.size()));
    EXPECT_TRUE(rep.ok()) << rep.failures.size() << " failures";
    for (size_t i = 0; i < pts.size(); ++i) {
      ASSERT_EQ(rep.inputs[i].size(), 1);
      EXPECT_TRUE(spec.u_set.contains(rep.inputs[i], 1e-7));
      const Eigen::VectorXd next = spec.sys.A * pts[i] + spec.sys.B * rep.inputs[i];
      EXPECT_TRUE(membership(spec, next));
    }
  }
}

TEST(InvariantSet, FarPointsHaveNoAdmissibleInput) {
  const InvarianceReport rep = verify_control_invariance(ex1_spec(), {Eigen::Vector2d(50.0, 50.0)});
  EXPECT_FALSE(rep.ok());
  EXPECT_EQ(rep.failures, std::vector<int>{0});
}

TEST(InvariantSet, NestedInHorizon) {
  for (int N = 1; N < 6; ++N) {
    const InvariantSetSpec small = ex1_spec(N);
    const Polygon2D P = oracle2d::explicit_omega_inf(small.sys, small.omega, small.u_set, N, small.alpha);
    const InvariantSetSpec big = ex1_spec(N + 1);
    for (const Point& v : P.vertices()) EXPECT_TRUE(membership(big, v)) << "N " << N;
  }
}

TEST(InvariantSet, RayExtentMatchesBisection) {
  const InvariantSetSpec spec = ex1_spec();
  const ImplicitPolytope S = spec.lifted();
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int i = 0; i < 8; ++i) {
    const Eigen::Vector2d v = Eigen::Vector2d(g(rng), g(rng)).normalized();
    const double exact = ray_extent(S, v);
    const double bisected = ray_boundary([&](const Eigen::VectorXd& x) { return member_implicit(S, x); }, v,
                                         100.0, 40);
    EXPECT_NEAR(exact, bisected, 1e-6);
  }
}

TEST(InvariantSet, RayBoundaryChecksItsBracket) {
  const auto inside_unit = [](const Eigen::VectorXd& x) { return x.norm() <= 1.0; };
  EXPECT_NEAR(ray_boundary(inside_unit, Eigen::Vector2d(3, 4), 1.0, 50), 0.2, 1e-12);
  EXPECT_THROW(ray_boundary(inside_unit, Eigen::Vector2d(1, 0), 0.5, 10), std::invalid_argument);
  EXPECT_THROW(ray_boundary(inside_unit, Eigen::Vector2d(0, 0), 2.0, 10), std::invalid_argument);
  const auto never = [](const Eigen::VectorXd&) { return false; };
  EXPECT_THROW(ray_boundary(never, Eigen::Vector2d(1, 0), 2.0, 10), std::invalid_argument);
}

}  // namespace
}  // namespace invset
