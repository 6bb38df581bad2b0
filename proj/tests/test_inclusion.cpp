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

#include "invset/inclusion.hpp"
#include "invset/nstep.hpp"
#include "invset/oracle2d.hpp"
#include "support.hpp"

namespace invset {
namespace {

using oracle2d::Polygon2D;

// Largest normalized violation of Δ's rows over Γ's vertices; <= 0 iff Γ ⊆ Δ.
double vertex_margin(const Polyhedron& Gamma, const Polyhedron& Delta) {
  double worst = -kInf;
  const Polygon2D poly = Polygon2D::from_hrep(Gamma);
  for (const oracle2d::Point& v : poly.vertices()) {
    for (int i = 0; i < Delta.rows(); ++i) {
      const Eigen::Vector2d a = Delta.H().row(i).transpose();
      worst = std::max(worst, (a.dot(v) - Delta.h()[i]) / a.norm());
    }
  }
  return worst;
}

TEST(Farkas, BoxInsideLargerBox) {
  const auto cert = farkas_inclusion(unit_box(2), scale(unit_box(2), 2.0));
  ASSERT_TRUE(cert.has_value());
  EXPECT_TRUE(verify_farkas(unit_box(2), scale(unit_box(2), 2.0), *cert));
  EXPECT_GE(cert->T.minCoeff(), -1e-9);
}

TEST(Farkas, LargerBoxNotInside) {
  EXPECT_FALSE(farkas_inclusion(scale(unit_box(2), 2.0), unit_box(2)).has_value());
}

TEST(Farkas, HalfIdentityIsACertificate) {
  InclusionCertificate c;
  c.T = 0.5 * Eigen::MatrixXd::Identity(4, 4);
  // Γ is the unit box written with doubled rows, so T = ½·I maps its rows onto Δ's.
  const Polyhedron big(unit_box(2).H() * 2.0, unit_box(2).h() * 2.0);
  EXPECT_TRUE(verify_farkas(big, unit_box(2), c));
  c.T(0, 0) = -0.5;
  EXPECT_FALSE(verify_farkas(big, unit_box(2), c));
}

TEST(Farkas, DimensionMismatchThrows) {
  EXPECT_THROW(farkas_inclusion(unit_box(2), unit_box(3)), std::invalid_argument);
}

TEST(Farkas, AgreesWithVertexInclusionOnRandomPairs) {
  std::mt19937_64 rng(101);
  int decided = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Polyhedron G = testing::random_polygon(rng, 3 + trial % 5, 0.5, 1.5);
    const Polyhedron D = testing::random_polygon(rng, 3 + (trial / 5) % 5, 0.8, 2.0);
    for (const auto& [inner, outer] : {std::pair{G, D}, std::pair{D, G}}) {
      const double margin = vertex_margin(inner, outer);
      if (std::abs(margin) < 1e-6) continue;
      const auto cert = farkas_inclusion(inner, outer);
      EXPECT_EQ(cert.has_value(), margin < 0.0) << "trial " << trial;
      if (cert) {
        EXPECT_TRUE(verify_farkas(inner, outer, *cert));
      }
      ++decided;
    }
  }
  EXPECT_GT(decided, 190);
}

TEST(SumInclusion, SetInsideItself) {
  const Polyhedron P = testing::ex_omega();
  const auto cert = check_sum_inclusion(P, {{Eigen::Matrix2d::Identity(), P}});
  ASSERT_TRUE(cert.has_value());
  EXPECT_TRUE(verify_certificate(sum_inclusion_problem(P, {{Eigen::Matrix2d::Identity(), P}}), *cert));
}

TEST(SumInclusion, ThreeBoxNotInsideTwoBox) {
  const std::vector<SumTerm> terms{{Eigen::Matrix2d::Identity(), unit_box(2)},
                                   {Eigen::Matrix2d::Identity(), unit_box(2)}};
  EXPECT_FALSE(check_sum_inclusion(scale(unit_box(2), 3.0), terms).has_value());
  EXPECT_TRUE(check_sum_inclusion(scale(unit_box(2), 2.0), terms).has_value());
  const Polygon2D sum = oracle2d::minkowski_sum_2d(Polygon2D::from_hrep(unit_box(2)),
                                                   Polygon2D::from_hrep(unit_box(2)));
  EXPECT_FALSE(oracle2d::contains_by_vertices(Polygon2D::from_hrep(scale(unit_box(2), 3.0)), sum));
}

TEST(SumInclusion, LiftedDimensions) {
  // Terms of dimensions m = 2 and p = 1 in R^2; Ω with n_h = 4 rows.
  const std::vector<SumTerm> terms{{Eigen::Matrix2d::Identity(), testing::ex_omega()},
                                   {Eigen::Vector2d(0.5, 0.3), testing::ex_u()}};
  const LiftedInclusion p = sum_inclusion_problem(testing::ex_omega(), terms);
  const int n = 2, m = 2, pdim = 1, n_f = 4, n_g = 2, n_h = 4;
  EXPECT_EQ(p.n_g_bar(), 2 * n + n_f + n_g);
  EXPECT_EQ(p.n_h_bar(), n_h + 2 * m + 2 * pdim);
  EXPECT_EQ(p.n_bar(), n + m + pdim);
  const LpProblem lp = build_sum_inclusion_lp(testing::ex_omega(), terms);
  EXPECT_EQ(lp.num_vars, p.n_g_bar() * p.n_h_bar() + p.n_bar() * p.n_bar());
}

TEST(SumInclusion, MatchesNStepConditionOnExampleOne) {
  const LinearSystem sys = testing::ex1_system();
  const int N = 5;
  const double alpha5 = *solve_beta(sys, testing::ex_omega(), testing::ex_u(), N)->alpha;
  const MatrixPowers P(sys.A, N);
  const Eigen::MatrixXd Ainv = sys.A.inverse();
  const Eigen::MatrixXd AinvN = Ainv * Ainv * Ainv * Ainv * Ainv;
  for (const double alpha : {alpha5 * 0.999, alpha5 * 1.05}) {
    const Polyhedron seed = scale(testing::ex_omega(), alpha);
    // Ω_N = A^{-N}Ω ⊕ ⊕_{i<N} (-A^{i-N} B U) for invertible A.
    std::vector<SumTerm> terms{{AinvN, seed}};
    for (int i = 0; i < N; ++i) terms.push_back({-AinvN * P[i] * sys.B, testing::ex_u()});
    const bool sum_ok = check_sum_inclusion(seed, terms).has_value();
    const bool nstep_ok = check_nstep(sys, seed, testing::ex_u(), N).has_value();
    EXPECT_EQ(sum_ok, nstep_ok) << "alpha " << alpha;
    EXPECT_EQ(sum_ok, alpha < alpha5);
  }
}

struct RandomSumInstance {
  Polyhedron omega;
  std::vector<SumTerm> terms;
  Polygon2D explicit_sum;
};

RandomSumInstance random_sum_instance(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> e(-1.5, 1.5);
  std::uniform_real_distribution<double> s(0.3, 1.6);
  RandomSumInstance r;
  const Polyhedron G = testing::random_polygon(rng, 5, 0.4, 1.5);
  const Polyhedron D = testing::random_polygon(rng, 4, 0.4, 1.5);
  Eigen::Matrix2d P, Q;
  P << e(rng), e(rng), e(rng), e(rng);
  Q << e(rng), e(rng), e(rng), e(rng);
  r.terms = {{P, G}, {Q, D}};
  r.explicit_sum = oracle2d::minkowski_sum_2d(Polygon2D::from_hrep(G).transformed(P),
                                              Polygon2D::from_hrep(D).transformed(Q));
  r.omega = scale(testing::random_polygon(rng, 6, 0.3, 1.0), s(rng));
  return r;
}

TEST(SumInclusion, CertificatesAreConfirmedByExplicitGeometry) {
  std::mt19937_64 rng(303);
  int certified = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const RandomSumInstance inst = random_sum_instance(rng);
    const auto cert = check_sum_inclusion(inst.omega, inst.terms);
    if (!cert) continue;
    ++certified;
    EXPECT_TRUE(verify_certificate(sum_inclusion_problem(inst.omega, inst.terms), *cert));
    EXPECT_TRUE(oracle2d::contains_by_vertices(Polygon2D::from_hrep(inst.omega), inst.explicit_sum, 1e-6))
        << "trial " << trial;
  }
  EXPECT_GT(certified, 5);
}

TEST(SumInclusion, SuccessSurvivesShrinkingTheSeed) {
  std::mt19937_64 rng(404);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 20; ++trial) {
    const RandomSumInstance inst = random_sum_instance(rng);
    if (!check_sum_inclusion(inst.omega, inst.terms)) continue;
    EXPECT_TRUE(check_sum_inclusion(scale(inst.omega, 0.5), inst.terms).has_value());
    ++checked;
  }
  EXPECT_EQ(checked, 20);
}

TEST(SumInclusion, TamperedCertificateIsRejected) {
  const std::vector<SumTerm> terms{{Eigen::Matrix2d::Identity(), unit_box(2)},
                                   {Eigen::Matrix2d::Identity(), unit_box(2)}};
  const LiftedInclusion p = sum_inclusion_problem(unit_box(2), terms);
  auto cert = solve_certificate(p);
  ASSERT_TRUE(cert.has_value());
  EXPECT_TRUE(verify_certificate(p, *cert));
  auto bad_pin = *cert;
  (*bad_pin.M)(0, 0) += 1e-3;
  EXPECT_FALSE(verify_certificate(p, bad_pin));
  auto negative = *cert;
  negative.T(0, 0) = -1.0;
  EXPECT_FALSE(verify_certificate(p, negative));
  auto no_map = *cert;
  no_map.M.reset();
  EXPECT_FALSE(verify_certificate(p, no_map));
}

}  // namespace
}  // namespace invset
