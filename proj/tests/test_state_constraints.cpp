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
#include <vector>

#include "invset/nstep.hpp"
#include "invset/oracle2d.hpp"
#include "invset/state_constraints.hpp"
#include "support.hpp"

namespace invset {
namespace {

using oracle2d::Point;
using oracle2d::Polygon2D;
using testing::ex1_system;
using testing::ex3_x;
using testing::ex_omega;
using testing::ex_u;

constexpr double kBeta5 = 0.73093312290392565;

// Frozen σ for Example 3 (α = 1/β_N), recorded after the oracle check below agreed.
struct SigmaCase {
  int N;
  double beta;
  double sigma;
};
constexpr SigmaCase kSigma[] = {{5, 0.73093312290392565, 0.42658809158775951},
                                {10, 0.60594320100332266, 0.35945116316582099},
                                {15, 0.55737698473132424, 0.34226278095834456}};

// σ from the explicit polygon: min over rows of f_i / h_P(F_i).
double oracle_sigma(const Polygon2D& P, const Polyhedron& X) {
  double s = 1.0;
  for (int i = 0; i < X.rows(); ++i) {
    const double d = P.support(X.H().row(i).transpose());
    if (d > 0.0) s = std::min(s, X.h()[i] / d);
  }
  return s;
}

double max_gap(const ImplicitPolytope& S, const Polygon2D& P, int dirs) {
  double gap = 0.0;
  for (const Point& d : oracle2d::unit_directions(dirs)) {
    gap = std::max(gap, std::abs(support_implicit(S, d) - P.support(d)));
  }
  return gap;
}

TEST(Sigma, ExampleThreeFrozenAndOracle) {
  for (const SigmaCase& c : kSigma) {
    const InvariantSetSpec spec{ex1_system(), ex_omega(), ex_u(), c.N, 1.0 / c.beta};
    const SigmaResult r = sigma_scale(spec, ex3_x());
    EXPECT_NEAR(r.sigma, c.sigma, 1e-7) << "N " << c.N;
    EXPECT_FALSE(r.degenerate);
    const Polygon2D P = oracle2d::explicit_omega_inf(spec.sys, spec.omega, spec.u_set, c.N, spec.alpha);
    EXPECT_NEAR(r.sigma, oracle_sigma(P, ex3_x()), 1e-6);
    const Polygon2D X = Polygon2D::from_hrep(ex3_x());
    EXPECT_TRUE(oracle2d::contains_by_vertices(P.scaled(r.sigma), X, 1e-7));
    EXPECT_FALSE(oracle2d::contains_by_vertices(P.scaled(1.01 * r.sigma), X, 1e-7));
  }
}

TEST(Sigma, LooseConstraintsGiveOne) {
  const InvariantSetSpec spec{ex1_system(), ex_omega(), ex_u(), 5, 1.0 / kBeta5};
  EXPECT_DOUBLE_EQ(sigma_scale(spec, scale(unit_box(2), 100.0)).sigma, 1.0);
}

TEST(Sigma, ConstraintThroughTheOriginIsDegenerate) {
  const InvariantSetSpec spec{ex1_system(), ex_omega(), ex_u(), 3, 1.0};
  const Polyhedron half(Eigen::RowVector2d(1.0, 0.0), Eigen::VectorXd::Zero(1));
  const SigmaResult r = sigma_scale(spec, half);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.sigma, 0.0);
}

TEST(MuNStep, ExampleThreeIsOne) {
  for (int N : {5, 10, 15}) {
    const auto r = solve_mu_nstep(ex1_system(), ex_omega(), ex3_x(), ex_u(), N);
    ASSERT_TRUE(r.has_value());
    EXPECT_NEAR(r->spec.mu, 1.0, 1e-7) << "N " << N;
    EXPECT_EQ(r->lp_solves, 1);
    ASSERT_TRUE(r->certificate.has_value());
    EXPECT_TRUE(verify_certificate(mu_nstep_problem(ex1_system(), ex_omega(), ex3_x(), ex_u(), N),
                                   *r->certificate));
  }
}

TEST(MuNStep, InactiveStateConstraintsRecoverBeta) {
  const auto r = solve_mu_nstep(ex1_system(), ex_omega(), scale(unit_box(2), 1e6), ex_u(), 5);
  ASSERT_TRUE(r.has_value());
  EXPECT_NEAR(r->spec.mu, kBeta5, 1e-6);
}

TEST(MuNStep, MonotoneAlongMultiples) {
  const Polyhedron X = box(Eigen::Vector2d(-3.0, -1.5), Eigen::Vector2d(3.0, 1.5));
  double previous = kInf;
  for (int N : {2, 4, 8}) {
    const auto r = solve_mu_nstep(ex1_system(), ex_omega(), X, ex_u(), N);
    ASSERT_TRUE(r.has_value());
    EXPECT_LE(r->spec.mu, previous + 1e-7) << "N " << N;
    previous = r->spec.mu;
  }
}

TEST(MuFull, NoLargerThanNStepAndCertified) {
  const Polyhedron X = box(Eigen::Vector2d(-3.0, -1.5), Eigen::Vector2d(3.0, 1.5));
  for (int N : {2, 4}) {
    const auto nstep = solve_mu_nstep(ex1_system(), ex_omega(), X, ex_u(), N);
    const auto full = solve_mu_full(ex1_system(), ex_omega(), X, ex_u(), N);
    ASSERT_TRUE(nstep && full);
    EXPECT_LE(full->spec.mu, nstep->spec.mu * (1 + 1e-4) + 1e-7) << "N " << N;
    ASSERT_TRUE(full->certificate.has_value());
    EXPECT_TRUE(verify_certificate(mu_full_problem(ex1_system(), ex_omega(), X, ex_u(), N, full->spec.mu),
                                   *full->certificate));
  }
}

TEST(MuFull, ExampleThreeHitsTheLowerBound) {
  const auto r = solve_mu_full(ex1_system(), ex_omega(), ex3_x(), ex_u(), 5);
  ASSERT_TRUE(r.has_value());
  EXPECT_NEAR(r->spec.mu, 1.0, 1e-9);
  EXPECT_EQ(r->lp_solves, 1);
}

TEST(MuSet, LiesInXAndMatchesOracle) {
  const Polyhedron X = box(Eigen::Vector2d(-3.0, -1.5), Eigen::Vector2d(3.0, 1.5));
  const int N = 4;
  const auto r = solve_mu_nstep(ex1_system(), ex_omega(), X, ex_u(), N);
  ASSERT_TRUE(r.has_value());
  const ImplicitPolytope S = mu_set(r->spec);
  for (int i = 0; i < X.rows(); ++i) {
    EXPECT_LE(support_implicit(S, X.H().row(i).transpose()), X.h()[i] + 1e-7);
  }
  const Polygon2D P =
      oracle2d::explicit_constrained_omega_inf(ex1_system(), ex_omega(), X, ex_u(), N, r->spec.sigma());
  EXPECT_LT(max_gap(S, P, 32), 1e-6);
  // Ω is certified into Ω_N(μX, μU), so σΩ lies in the state-frame set.
  EXPECT_TRUE(oracle2d::contains_by_vertices(Polygon2D::from_hrep(ex_omega()).scaled(r->spec.sigma()), P, 1e-7));
}

TEST(MuSet, ContainsSigmaScaledInvariantSet) {
  const int N = 5;
  const auto mu = solve_mu_nstep(ex1_system(), ex_omega(), ex3_x(), ex_u(), N);
  ASSERT_TRUE(mu.has_value());
  const InvariantSetSpec spec{ex1_system(), ex_omega(), ex_u(), N, 1.0 / kBeta5};
  const double sigma = sigma_scale(spec, ex3_x()).sigma;
  const Polygon2D inner =
      oracle2d::explicit_omega_inf(spec.sys, spec.omega, spec.u_set, N, spec.alpha).scaled(sigma);
  const ImplicitPolytope S = mu_set(mu->spec);
  for (const Point& v : inner.vertices()) EXPECT_TRUE(member_implicit(S, v)) << v.transpose();
}

TEST(ConstrainedOmegaK, MatchesOracleInNormalizedFrame) {
  const Polyhedron X = box(Eigen::Vector2d(-3.0, -1.5), Eigen::Vector2d(3.0, 1.5));
  for (double mu : {0.8, 1.0, 1.7}) {
    const ConstrainedSpec spec{ex1_system(), ex_omega(), X, ex_u(), 3, mu};
    const ImplicitPolytope S = build_constrained_omega_k(spec, 3);
    // Normalized frame = μ × state frame with terminal set σΩ.
    const Polygon2D P =
        oracle2d::explicit_constrained_omega_k(ex1_system(), ex_omega(), X, ex_u(), 3, 1.0 / mu).scaled(mu);
    EXPECT_LT(max_gap(S, P, 32), 1e-6) << "mu " << mu;
  }
  EXPECT_THROW(build_constrained_omega_k({ex1_system(), ex_omega(), X, ex_u(), 3, 1.0}, 4),
               std::invalid_argument);
}

}  // namespace
}  // namespace invset
