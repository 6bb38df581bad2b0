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
using testing::support_slack;

constexpr double kBeta5 = 0.73093312290392565;

// Ω∞^α for Example 1 at N = 5, α = 1/β_5, frozen from the explicit construction.
const std::vector<Point> kEx1OmegaInf5 = {
    {-4.6317958066151661, 0.51084837196932242}, {-4.0530921029114637, -0.18359607247511989},
    {-3.0885859300719556, -0.76229977617882527}, {-1.8829532140225735, -1.2445528625985782},
    {-0.60668253068631728, -1.6400951841151254}, {0.21671954673074367, -1.8667459867629077},
    {1.0602843353061755, -2.0556216556360596},   {1.8944186513892767, -2.2130180463627767},
    {2.6988336305775871, -2.344181705302617},    {3.7984624732835073, -2.344181705302617},
    {4.6317958066151661, -1.3441817053046283},   {4.6317958066151661, -0.51084837196932242},
    {4.0530921029114637, 0.18359607247512022},   {3.0885859300719583, 0.76229977617882427},
    {1.8829532140225738, 1.2445528625985782},    {0.60668253068593203, 1.6400951841155882},
    {-0.21671954673088223, 1.8667459867629907},  {-1.0602843353055884, 2.0556216556358251},
    {-1.8944186513906485, 2.2130180463631879},   {-2.6988336305777523, 2.3441817053026566},
    {-3.7984624732818308, 2.3441817053026566},   {-4.6317958066151661, 1.3441817053027645}};

Polygon2D random_convex(std::mt19937_64& rng, int k) {
  return Polygon2D::from_hrep(testing::random_polygon(rng, k, 0.3, 2.0));
}

// max |h_P(d) - h_Q(d)| over 64 directions.
double support_gap(const Polygon2D& P, const Polygon2D& Q) {
  return std::max(std::abs(support_slack(P, Q)), std::abs(support_slack(Q, P)));
}

TEST(Polygon, HullDropsInteriorDuplicateAndCollinearPoints) {
  const Polygon2D P = Polygon2D::hull(
      {{1, 1}, {-1, 1}, {0, 0}, {-1, -1}, {1, -1}, {1, 1}, {0, 1}, {0.2, -0.3}});
  EXPECT_EQ(P.size(), 4u);
  EXPECT_NEAR(P.area(), 4.0, 1e-14);  // positive area: counterclockwise
  for (const Point& v : P.vertices()) EXPECT_NEAR(v.cwiseAbs().minCoeff(), 1.0, 1e-15);
}

TEST(Polygon, DegenerateHulls) {
  EXPECT_TRUE(Polygon2D::hull({}).empty());
  EXPECT_EQ(Polygon2D::hull({{1, 2}, {1, 2}}).size(), 1u);
  const Polygon2D seg = Polygon2D::hull({{0, 0}, {1, 1}, {2, 2}, {0.5, 0.5}});
  ASSERT_EQ(seg.size(), 2u);
  EXPECT_DOUBLE_EQ(seg.area(), 0.0);
  EXPECT_TRUE(seg.contains({1.5, 1.5}));
  EXPECT_FALSE(seg.contains({1.5, 1.4}));
  EXPECT_THROW(Polygon2D::hull({{0, std::nan("")}}), std::invalid_argument);
}

TEST(Polygon, SupportSignedDistanceAndArea) {
  const Polygon2D B = Polygon2D::from_hrep(ex_omega());
  EXPECT_EQ(B.size(), 4u);
  EXPECT_DOUBLE_EQ(B.area(), 4.0);
  EXPECT_DOUBLE_EQ(B.support({1, 1}), 2.0);
  EXPECT_DOUBLE_EQ(B.signed_distance({0, 0}), -1.0);
  EXPECT_DOUBLE_EQ(B.signed_distance({2, 0}), 1.0);
  EXPECT_NEAR(B.signed_distance({2, 2}), std::sqrt(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(B.signed_distance({1, 0.5}), 0.0);
  EXPECT_EQ(Polygon2D().support({1, 0}), -kInf);
}

TEST(Polygon, ClipAndIntersect) {
  const Polygon2D B = Polygon2D::box(-1, 1, -1, 1);
  const Polygon2D half = B.clip({1, 0}, 0.0);
  EXPECT_DOUBLE_EQ(half.area(), 2.0);
  EXPECT_TRUE(B.clip({1, 0}, -2.0).empty());
  EXPECT_EQ(B.clip({1, 0}, 5.0).size(), 4u);
  const Polygon2D tri = B.clip({1, 1}, 0.0);
  EXPECT_EQ(tri.size(), 3u);
  EXPECT_DOUBLE_EQ(tri.area(), 2.0);
  EXPECT_DOUBLE_EQ(B.intersect(scale(unit_box(2), 0.5)).area(), 1.0);
}

TEST(Polygon, HRepRoundTrip) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Polygon2D P = random_convex(rng, 3 + trial % 6);
    const Polygon2D Q = Polygon2D::from_hrep(P.to_hrep());
    EXPECT_EQ(P.size(), Q.size());
    EXPECT_LT(support_gap(P, Q), 1e-10);
  }
  const Polygon2D seg = Polygon2D::hull({{-1, 0}, {2, 1}});
  EXPECT_LT(support_gap(seg, Polygon2D::from_hrep(seg.to_hrep())), 1e-12);
  const Polygon2D pt = Polygon2D::hull({{0.5, -0.5}});
  EXPECT_EQ(Polygon2D::from_hrep(pt.to_hrep()).size(), 1u);
  EXPECT_TRUE(Polygon2D::from_hrep(Polygon2D().to_hrep()).empty());
}

TEST(Minkowski, BoxesAndSegments) {
  const Polygon2D B = Polygon2D::box(-1, 1, -1, 1);
  EXPECT_LT(support_gap(minkowski_sum_2d(B, B), B.scaled(2.0)), 1e-14);
  const Polygon2D seg = Polygon2D::hull({{-1, -1}, {1, 1}});
  const Polygon2D S = minkowski_sum_2d(B, seg);
  EXPECT_EQ(S.size(), 6u);
  EXPECT_DOUBLE_EQ(S.area(), 12.0);  // 4 + |s|·width of B across s = 4 + 2√2·2√2
  EXPECT_EQ(minkowski_sum_2d(seg, seg).size(), 2u);
  const Polygon2D pt = Polygon2D::hull({{3, 4}});
  EXPECT_LT(support_gap(minkowski_sum_2d(B, pt), Polygon2D::box(2, 4, 3, 5)), 1e-14);
  EXPECT_TRUE(minkowski_sum_2d(B, Polygon2D()).empty());
}

TEST(Minkowski, OffsetBoxesSumAroundOrigin) {
  // Γ = [1,2]×[-1,1], Δ = [-3,-1]×[-1,1]: Γ ⊕ Δ = [-2,1]×[-2,2] contains 0
  // although neither summand does.
  const Polygon2D G = Polygon2D::box(1, 2, -1, 1);
  const Polygon2D D = Polygon2D::box(-3, -1, -1, 1);
  const Polygon2D S = minkowski_sum_2d(G, D);
  EXPECT_LT(support_gap(S, Polygon2D::box(-2, 1, -2, 2)), 1e-14);
  EXPECT_TRUE(S.contains({0, 0}));
  EXPECT_FALSE(G.contains({0, 0}));
  EXPECT_FALSE(D.contains({0, 0}));
}

TEST(Minkowski, SupportIsAdditiveCommutativeAndAssociative) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const Polygon2D P = random_convex(rng, 3 + trial % 5);
    const Polygon2D Q = random_convex(rng, 3 + (trial + 2) % 5);
    const Polygon2D R = random_convex(rng, 4);
    const Polygon2D PQ = minkowski_sum_2d(P, Q);
    EXPECT_LT(support_gap(PQ, minkowski_sum_2d(Q, P)), 1e-12);
    EXPECT_LT(support_gap(minkowski_sum_2d(PQ, R), minkowski_sum_2d(P, minkowski_sum_2d(Q, R))), 1e-12);
    for (const Point& d : oracle2d::unit_directions(32)) {
      EXPECT_NEAR(PQ.support(d), P.support(d) + Q.support(d), 1e-12);
    }
  }
}

TEST(Images, LinearImageOfIntervalAndBox) {
  const Polygon2D seg = oracle2d::linear_image(Eigen::Vector2d(0.5, 0.3), ex_u());
  ASSERT_EQ(seg.size(), 2u);
  EXPECT_DOUBLE_EQ(seg.support({0.5, 0.3}), 2.0 * 0.34);
  const Eigen::Matrix2d M = (Eigen::Matrix2d() << 1, 1, 0, 2).finished();
  const Polygon2D par = oracle2d::linear_image(M, unit_box(2));
  EXPECT_NEAR(par.area(), 4.0 * 2.0, 1e-13);
  EXPECT_EQ(oracle2d::linear_image(Eigen::Vector2d::Zero(), ex_u()).size(), 1u);
}

TEST(Images, PreimageUnderSingularMapIsClippedStrip) {
  const Eigen::Matrix2d A = ex2_system().A;
  const Polygon2D P = oracle2d::preimage_2d(A, Polygon2D::box(-1, 1, -1, 1), 10.0);
  // {x : |1.2 x1 + x2| <= 1} ∩ [-10, 10]².
  EXPECT_TRUE(P.contains({5, -5.5}));
  EXPECT_FALSE(P.contains({0, 1.1}));
  EXPECT_NEAR(P.support({1.2, 1.0}), 1.0, 1e-12);
}

TEST(OmegaK, RecursionMatchesExplicitSums) {
  for (const LinearSystem& sys : {ex1_system(), ex2_system()}) {
    for (int k = 1; k <= 6; ++k) {
      for (double alpha : {1.0, 1.0 / kBeta5}) {
        const Polygon2D direct = oracle2d::explicit_omega_k(sys, ex_omega(), ex_u(), k, alpha);
        const Polygon2D rec = oracle2d::explicit_omega_k_recursive(sys, ex_omega(), ex_u(), k, alpha);
        EXPECT_LT(support_gap(direct, rec), 1e-7 * (1 + direct.support({1, 0}))) << "k " << k;
      }
    }
  }
}

TEST(OmegaK, OneStepByHand) {
  // Ω_1 = A^{-1}(Ω ⊕ (-BU)); check the support against the definition.
  const LinearSystem sys = ex1_system();
  const Polygon2D O1 = oracle2d::explicit_omega_k(sys, ex_omega(), ex_u(), 1);
  const Polygon2D image = O1.transformed(sys.A);
  const Polygon2D target =
      minkowski_sum_2d(Polygon2D::from_hrep(ex_omega()), oracle2d::linear_image(-sys.B, ex_u()));
  EXPECT_LT(support_gap(image, target), 1e-12);
}

TEST(OmegaInf, ExampleOneFixture) {
  const Polygon2D P = oracle2d::explicit_omega_inf(ex1_system(), ex_omega(), ex_u(), 5, 1.0 / kBeta5);
  const Polygon2D fixture = Polygon2D::hull(kEx1OmegaInf5);
  EXPECT_EQ(fixture.size(), kEx1OmegaInf5.size());
  EXPECT_LT(support_gap(P, fixture), 1e-6);
  // Symmetric data give a symmetric set.
  EXPECT_LT(support_gap(P, P.scaled(-1.0)), 1e-9);
  EXPECT_TRUE(oracle2d::contains_by_vertices(Polygon2D::from_hrep(ex_omega()).scaled(1.0 / kBeta5), P, 1e-7));
}

TEST(OmegaInf, NestedInHorizon) {
  const LinearSystem sys = ex1_system();
  const double alpha = 1.0 / kBeta5;
  Polygon2D prev = oracle2d::explicit_omega_inf(sys, ex_omega(), ex_u(), 1, alpha);
  for (int N = 2; N <= 8; ++N) {
    const Polygon2D cur = oracle2d::explicit_omega_inf(sys, ex_omega(), ex_u(), N, alpha);
    EXPECT_TRUE(oracle2d::contains_by_vertices(prev, cur, 1e-9)) << "N " << N;
    prev = cur;
  }
}

TEST(ContainsByVertices, Basics) {
  const Polygon2D B = Polygon2D::box(-1, 1, -1, 1);
  EXPECT_TRUE(oracle2d::contains_by_vertices(B.scaled(0.5), B));
  EXPECT_TRUE(oracle2d::contains_by_vertices(B, B));
  EXPECT_FALSE(oracle2d::contains_by_vertices(B.scaled(1.01), B));
  EXPECT_TRUE(oracle2d::contains_by_vertices(Polygon2D(), B));
  EXPECT_FALSE(oracle2d::contains_by_vertices(B, Polygon2D()));
}

TEST(Sigma, SequenceIsNonIncreasing) {
  for (const LinearSystem& sys : {ex1_system(), ex2_system()}) {
    const Polygon2D S0 = Polygon2D::box(-1000, 1000, -1000, 1000);
    const auto seq = oracle2d::outer_approx_sequence(sys, ex_u(), S0, 30);
    ASSERT_EQ(seq.sets.size(), 31u);
    EXPECT_FALSE(seq.truncated);
    for (size_t k = 1; k < seq.sets.size(); ++k) {
      EXPECT_TRUE(oracle2d::contains_by_vertices(seq.sets[k], seq.sets[k - 1], 1e-7)) << "k " << k;
    }
  }
}

TEST(Sigma, ZeroDynamicsFixesSigmaZero) {
  const LinearSystem sys{Eigen::Matrix2d::Zero(), Eigen::Vector2d(1.0, 0.0)};
  const Polygon2D S0 = Polygon2D::box(-3, 3, -2, 2);
  const auto seq = oracle2d::outer_approx_sequence(sys, ex_u(), S0, 3);
  for (const Polygon2D& S : seq.sets) EXPECT_LT(support_gap(S, S0), 1e-12);
}

TEST(Sigma, ContainsOmegaInfAlpha) {
  const LinearSystem sys = ex1_system();
  const auto seq = oracle2d::outer_approx_sequence(sys, ex_u(), Polygon2D::box(-1000, 1000, -1000, 1000), 60);
  const Polygon2D omega = oracle2d::explicit_omega_inf(sys, ex_omega(), ex_u(), 5, 1.0 / kBeta5);
  EXPECT_TRUE(oracle2d::contains_by_vertices(omega, seq.sets.back(), 1e-7));
}

TEST(Directions, EvenlySpacedUnitVectors) {
  const auto d = oracle2d::unit_directions(8);
  ASSERT_EQ(d.size(), 8u);
  for (const Point& p : d) EXPECT_NEAR(p.norm(), 1.0, 1e-15);
  EXPECT_NEAR(d[2].y(), 1.0, 1e-15);
}

}  // namespace
}  // namespace invset
