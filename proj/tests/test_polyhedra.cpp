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

#include <random>

#include "invset/oracle2d.hpp"
#include "invset/polyhedra.hpp"
#include "support.hpp"

namespace invset {
namespace {

Polyhedron gamma_box() { return box(Eigen::Vector2d(1, -1), Eigen::Vector2d(2, 1)); }
Polyhedron delta_box() { return box(Eigen::Vector2d(-3, -1), Eigen::Vector2d(-1, 1)); }
Eigen::Matrix2d singular_projector() { return (Eigen::Matrix2d() << 0, 0, 0, 1).finished(); }

TEST(Polyhedra, UnitBoxRows) {
  EXPECT_EQ(unit_box(1).rows(), 2);
  EXPECT_EQ(unit_box(2).rows(), 4);
  EXPECT_EQ(unit_box(20).rows(), 40);
  EXPECT_TRUE(unit_box(1).contains(Eigen::VectorXd::Constant(1, 1.0)));
  EXPECT_FALSE(unit_box(1).contains(Eigen::VectorXd::Constant(1, 1.1)));
  EXPECT_THROW(unit_box(0), std::invalid_argument);
}

TEST(Polyhedra, PreimageUnderIdentityKeepsRows) {
  const Polyhedron P = gamma_box();
  const Polyhedron Q = preimage(Eigen::Matrix2d::Identity(), P);
  EXPECT_EQ(Q.H(), P.H());
  EXPECT_EQ(Q.h(), P.h());
}

TEST(Polyhedra, PreimageOfBoxesUnderSingularMapIsEmpty) {
  EXPECT_TRUE(preimage(singular_projector(), gamma_box()).is_empty());
  EXPECT_TRUE(preimage(singular_projector(), delta_box()).is_empty());
}

TEST(Polyhedra, PreimageOfSumUnderSingularMapIsStrip) {
  const Polyhedron sum = box(Eigen::Vector2d(-2, -2), Eigen::Vector2d(1, 2));
  const Polyhedron strip = preimage(singular_projector(), sum);
  EXPECT_FALSE(strip.is_empty());
  EXPECT_TRUE(strip.contains(Eigen::Vector2d(1e6, 2.0)));
  EXPECT_TRUE(strip.contains(Eigen::Vector2d(-1e6, -2.0)));
  EXPECT_FALSE(strip.contains(Eigen::Vector2d(0.0, 2.01)));
}

TEST(Polyhedra, PreimageDimensionMismatchThrows) {
  EXPECT_THROW(preimage(Eigen::Matrix3d::Identity(), unit_box(2)), std::invalid_argument);
}

TEST(Polyhedra, ScaleExamples) {
  const Polyhedron P = unit_box(1);
  const Polyhedron same = scale(P, 1.0);
  EXPECT_EQ(same.H(), P.H());
  EXPECT_EQ(same.h(), P.h());
  EXPECT_EQ(scale(P, 2.0).h(), Eigen::Vector2d(2.0, 2.0));

  const Polyhedron zero = scale(unit_box(2), 0.0);
  EXPECT_EQ(zero.rows(), 4);
  EXPECT_TRUE(zero.contains(Eigen::Vector2d::Zero()));
  EXPECT_FALSE(zero.contains(Eigen::Vector2d(1e-6, 0.0)));

  EXPECT_TRUE(scale(Polyhedron::empty(2), 0.0).is_empty());
  EXPECT_THROW(scale(P, -1.0), std::invalid_argument);
}

TEST(Polyhedra, ScalingDoesNotCommuteWithSingularPreimageAtZero) {
  const Eigen::Matrix2d A = singular_projector();
  const Polyhedron line = preimage(A, scale(unit_box(2), 0.0));
  const Polyhedron point = scale(preimage(A, unit_box(2)), 0.0);
  EXPECT_TRUE(line.contains(Eigen::Vector2d(5.0, 0.0)));
  EXPECT_FALSE(line.contains(Eigen::Vector2d(0.0, 0.1)));
  EXPECT_FALSE(point.contains(Eigen::Vector2d(5.0, 0.0)));
  EXPECT_TRUE(point.contains(Eigen::Vector2d::Zero()));
}

TEST(Polyhedra, PreimageComposes) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> e(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Matrix2d A, B;
    A << e(rng), e(rng), e(rng), e(rng);
    B << e(rng), e(rng), e(rng), e(rng);
    const Polyhedron P = testing::random_polygon(rng, 6, 0.5, 2.0);
    const Polyhedron lhs = preimage(A, preimage(B, P));
    const Polyhedron rhs = preimage(B * A, P);
    EXPECT_LT((lhs.H() - rhs.H()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_EQ(lhs.h(), rhs.h());
  }
}

TEST(Polyhedra, ScalingCommutesWithPreimageForNonzeroGamma) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> e(-2, 2);
  std::uniform_real_distribution<double> g(0.1, 3.0);
  std::uniform_real_distribution<double> pt(-4, 4);
  int compared = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Matrix2d A;
    A << e(rng), e(rng), e(rng), e(rng);
    const double gamma = g(rng);
    const Polyhedron P = testing::random_polygon(rng, 5, 0.5, 2.0);
    const Polyhedron lhs = scale(preimage(A, P), gamma);
    const Polyhedron rhs = preimage(A, scale(P, gamma));
    for (int s = 0; s < 50; ++s) {
      const Eigen::Vector2d x(pt(rng), pt(rng));
      EXPECT_EQ(lhs.contains(x), rhs.contains(x));
      ++compared;
    }
  }
  EXPECT_EQ(compared, 5000);
}

TEST(Polyhedra, SingleTermSumIsTheSet) {
  const Polyhedron P = gamma_box();
  const ImplicitPolytope S = minkowski_sum_implicit({{Eigen::Matrix2d::Identity(), P}});
  EXPECT_EQ(S.ambient_dim, 2);
  EXPECT_EQ(S.total_dim(), 4);
  EXPECT_TRUE(member_implicit(S, Eigen::Vector2d(1.5, 0.0)));
  EXPECT_FALSE(member_implicit(S, Eigen::Vector2d(0.5, 0.0)));
}

TEST(Polyhedra, SumOfOffsetBoxesContainsOrigin) {
  const ImplicitPolytope S = minkowski_sum_implicit(
      {{Eigen::Matrix2d::Identity(), gamma_box()}, {Eigen::Matrix2d::Identity(), delta_box()}});
  EXPECT_EQ(S.rows(), 2 * 2 + 4 + 4);
  EXPECT_TRUE(member_implicit(S, Eigen::Vector2d(-0.5, 0.0)));
  EXPECT_FALSE(member_implicit(S, Eigen::Vector2d(2.0, 0.0)));
  EXPECT_NEAR(support_implicit(S, Eigen::Vector2d(1, 0)), 1.0, 1e-9);
  EXPECT_NEAR(support_implicit(S, Eigen::Vector2d(-1, 0)), 2.0, 1e-9);
  EXPECT_NEAR(support_implicit(S, Eigen::Vector2d(0, 1)), 2.0, 1e-9);
}

TEST(Polyhedra, OriginIsInSumsOfOriginContainingSets) {
  std::mt19937_64 rng(5);
  const ImplicitPolytope S = minkowski_sum_implicit(
      {{Eigen::Matrix2d::Identity(), testing::random_polygon(rng, 5, 0.2, 1.0)},
       {Eigen::Vector2d(1.0, -2.0), testing::interval(-1.0, 0.5)}});
  EXPECT_TRUE(member_implicit(S, Eigen::Vector2d::Zero()));
}

TEST(Polyhedra, SupportOfUnboundedAndEmptySets) {
  const ImplicitPolytope strip =
      as_implicit(preimage(singular_projector(), box(Eigen::Vector2d(-2, -2), Eigen::Vector2d(1, 2))));
  EXPECT_EQ(support_implicit(strip, Eigen::Vector2d(1, 0)), kInf);
  EXPECT_NEAR(support_implicit(strip, Eigen::Vector2d(0, 1)), 2.0, 1e-9);
  EXPECT_THROW(support_implicit(as_implicit(Polyhedron::empty(2)), Eigen::Vector2d(1, 0)),
               std::domain_error);
}

TEST(Polyhedra, ImplicitSumMembershipMatchesExplicitSum) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> pt(-5, 5);
  std::uniform_real_distribution<double> e(-1.5, 1.5);
  int compared = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const Polyhedron G = testing::random_polygon(rng, 5, 0.3, 1.5);
    const Polyhedron D = testing::random_polygon(rng, 4, 0.3, 1.5);
    Eigen::Matrix2d P;
    P << e(rng), e(rng), e(rng), e(rng);
    const ImplicitPolytope S =
        minkowski_sum_implicit({{Eigen::Matrix2d::Identity(), G}, {P, D}});
    const oracle2d::Polygon2D exact = oracle2d::minkowski_sum_2d(
        oracle2d::Polygon2D::from_hrep(G), oracle2d::Polygon2D::from_hrep(D).transformed(P));
    for (int s = 0; s < 100; ++s) {
      const Eigen::Vector2d x(pt(rng), pt(rng));
      const double sd = exact.signed_distance(x);
      if (std::abs(sd) < 1e-6) continue;
      EXPECT_EQ(member_implicit(S, x), sd < 0.0) << "trial " << trial << " x " << x.transpose();
      ++compared;
    }
  }
  EXPECT_GT(compared, 900);
}

TEST(Polyhedra, MismatchedTermsThrow) {
  EXPECT_THROW(minkowski_sum_implicit({}), std::invalid_argument);
  EXPECT_THROW(minkowski_sum_implicit({{Eigen::Matrix2d::Identity(), unit_box(1)}}),
               std::invalid_argument);
  const ImplicitPolytope S = as_implicit(unit_box(2));
  EXPECT_THROW(member_implicit(S, Eigen::Vector3d::Zero()), std::invalid_argument);
}

}  // namespace
}  // namespace invset
