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

#include "invset/nstep.hpp"
#include "invset/oracle2d.hpp"
#include "support.hpp"

namespace invset {
namespace {

using oracle2d::Polygon2D;
using testing::ex1_system;
using testing::ex_omega;
using testing::ex_u;

// Frozen β_N for Example 1, recorded after the oracle bisection below agreed.
constexpr double kBeta5 = 0.73093312290392565;
constexpr double kBeta10 = 0.60594320100332266;
constexpr double kBeta15 = 0.55737698473132424;
constexpr double kBeta20 = 0.53469396870632924;

LinearSystem nilpotent() { return {Eigen::Matrix2d::Zero(), Eigen::Vector2d(1.0, 0.0)}; }

// αΩ ⊆ Ω_N^α decided by explicit 2-D geometry.
bool oracle_nstep(const LinearSystem& sys, const Polyhedron& omega, const Polyhedron& U, int N,
                  double alpha) {
  const Polygon2D seed = Polygon2D::from_hrep(omega).scaled(alpha);
  return oracle2d::contains_by_vertices(seed, oracle2d::explicit_omega_k(sys, omega, U, N, alpha), 1e-9);
}

TEST(NStepMatrices, OneStepLayout) {
  const LinearSystem sys = ex1_system();
  const NStepMatrices m = build_nstep_matrices(sys, ex_omega(), ex_u(), 1);
  const Eigen::MatrixXd G = m.G_bar;
  const Eigen::MatrixXd H = ex_omega().H();
  EXPECT_LT((G.block(0, 0, 4, 2) - H * sys.A).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((G.block(0, 2, 4, 1) - H * sys.B).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT(G.block(4, 0, 2, 2).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((G.block(4, 2, 2, 1) - ex_u().H()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(m.g_bar.head(4), ex_omega().h());
  EXPECT_EQ(m.g_bar.tail(2), ex_u().h());
}

TEST(NStepMatrices, FirstBlockRowUsesPowers) {
  const LinearSystem sys = ex1_system();
  const int N = 4;
  const NStepMatrices m = build_nstep_matrices(sys, ex_omega(), ex_u(), N);
  const Eigen::MatrixXd G = m.G_bar;
  const MatrixPowers P(sys.A, N);
  const Eigen::MatrixXd H = ex_omega().H();
  EXPECT_LT((G.block(0, 0, 4, 2) - H * P[N]).cwiseAbs().maxCoeff(), 1e-12);
  for (int i = 1; i <= N; ++i) {
    EXPECT_LT((G.block(0, 2 + (i - 1), 4, 1) - H * P[i - 1] * sys.B).cwiseAbs().maxCoeff(), 1e-12);
  }
  EXPECT_EQ(m.g_tilde.head(4), ex_omega().h());
  EXPECT_EQ(m.g_tilde.tail(2 * N), Eigen::VectorXd::Zero(2 * N));
  EXPECT_EQ(m.g_hat.head(4), Eigen::VectorXd::Zero(4));
  EXPECT_EQ(m.h_bar.head(4), ex_omega().h());
  EXPECT_EQ(m.h_bar.tail(2 * N), Eigen::VectorXd::Zero(2 * N));
}

TEST(NStepMatrices, DimensionsMatchFormulas) {
  const LiftDims ex1{7, 14, 14};
  EXPECT_EQ(nstep_dims(2, 1, 4, 2, 5), ex1);
  const NStepMatrices m = build_nstep_matrices(ex1_system(), ex_omega(), ex_u(), 5);
  EXPECT_EQ(m.dims, ex1);
  EXPECT_EQ(m.G_bar.rows(), 14);
  EXPECT_EQ(m.G_bar.cols(), 7);
  EXPECT_EQ(m.H_bar.rows(), 14);
  EXPECT_EQ(m.H_bar.cols(), 7);

  const LiftDims ex4 = nstep_dims(20, 10, 40, 20, 15);
  EXPECT_EQ(ex4, (LiftDims{170, 340, 340}));
  EXPECT_EQ(ex4.n_g_bar * ex4.n_h_bar, 115600);
  const int table[] = {3, 5, 9, 15};
  const int t_entries[] = {100 * 100, 140 * 140, 220 * 220, 340 * 340};
  for (int i = 0; i < 4; ++i) {
    const LiftDims d = nstep_dims(20, 10, 40, 20, table[i]);
    EXPECT_EQ(d.n_g_bar * d.n_h_bar, t_entries[i]);
  }
}

TEST(NStepMatrices, RejectsBadInputs) {
  EXPECT_THROW(build_nstep_matrices(ex1_system(), ex_omega(), ex_u(), 0), std::invalid_argument);
  EXPECT_THROW(build_nstep_matrices(ex1_system(), unit_box(3), ex_u(), 2), std::invalid_argument);
  const Polyhedron shifted = box(Eigen::Vector2d(0.5, -1), Eigen::Vector2d(1, 1));
  EXPECT_THROW(build_nstep_matrices(ex1_system(), shifted, ex_u(), 2), std::invalid_argument);
}

TEST(CheckNStep, NilpotentOneStep) {
  EXPECT_TRUE(check_nstep(nilpotent(), ex_omega(), ex_u(), 1).has_value());
  const auto r = solve_beta(nilpotent(), ex_omega(), ex_u(), 1);
  ASSERT_TRUE(r.has_value());
  EXPECT_LE(r->beta, 1e-7);
  EXPECT_FALSE(r->alpha.has_value());
  EXPECT_EQ(algorithm2_search(nilpotent(), ex_omega(), ex_u(), 4), 1);
}

TEST(CheckNStep, ExampleOneVerdictsMatchOracle) {
  const LinearSystem sys = ex1_system();
  for (int N = 1; N <= 5; ++N) {
    const bool lp = check_nstep(sys, ex_omega(), ex_u(), N).has_value();
    EXPECT_EQ(lp, oracle_nstep(sys, ex_omega(), ex_u(), N, 1.0)) << "N " << N;
  }
  // β_2 > 1 >= β_3: the unscaled box first passes at N = 3.
  EXPECT_FALSE(check_nstep(sys, ex_omega(), ex_u(), 2).has_value());
  EXPECT_TRUE(check_nstep(sys, ex_omega(), ex_u(), 3).has_value());
  EXPECT_TRUE(check_nstep(sys, ex_omega(), ex_u(), 5).has_value());
  EXPECT_FALSE(algorithm2_search(sys, ex_omega(), ex_u(), 2).has_value());
  EXPECT_EQ(algorithm2_search(sys, ex_omega(), ex_u(), 10), 3);
}

TEST(CheckNStep, ScaledSeedHoldsAndCertificateVerifies) {
  const LinearSystem sys = ex1_system();
  const Polyhedron seed = scale(ex_omega(), 1.0 / kBeta5 * (1 - 1e-6));
  const auto cert = check_nstep(sys, seed, ex_u(), 5);
  ASSERT_TRUE(cert.has_value());
  const NStepMatrices m = build_nstep_matrices(sys, seed, ex_u(), 5);
  EXPECT_TRUE(verify_certificate(nstep_problem(m, 2, false), *cert));
  const auto found = algorithm2_search(sys, seed, ex_u(), 5);
  ASSERT_TRUE(found.has_value());
  EXPECT_LE(*found, 5);
  EXPECT_FALSE(check_nstep(sys, scale(ex_omega(), 1.05 / kBeta5), ex_u(), 5).has_value());
}

TEST(SolveBeta, ExampleOneFrozenValues) {
  const LinearSystem sys = ex1_system();
  const double frozen[] = {kBeta5, kBeta10, kBeta15, kBeta20};
  const int horizons[] = {5, 10, 15, 20};
  double previous = kInf;
  for (int i = 0; i < 4; ++i) {
    const auto r = solve_beta(sys, ex_omega(), ex_u(), horizons[i]);
    ASSERT_TRUE(r.has_value());
    EXPECT_NEAR(r->beta, frozen[i], 1e-7) << "N " << horizons[i];
    EXPECT_LE(r->beta, previous + 1e-9);
    previous = r->beta;
    ASSERT_TRUE(r->alpha.has_value());
    EXPECT_DOUBLE_EQ(*r->alpha, 1.0 / r->beta);
    const NStepMatrices m = build_nstep_matrices(sys, ex_omega(), ex_u(), horizons[i]);
    EXPECT_TRUE(verify_certificate(nstep_problem(m, 2, true), r->certificate));
    EXPECT_EQ(r->dims, m.dims);
    EXPECT_EQ(r->lp_vars, m.dims.n_g_bar * m.dims.n_h_bar + m.dims.n_bar * m.dims.n_bar + 1);
  }
}

TEST(SolveBeta, AgreesWithOracleBisection) {
  const LinearSystem sys = ex1_system();
  const int N = 5;
  double lo = 0.5, hi = 3.0;  // α bracket: oracle holds at lo, fails at hi
  ASSERT_TRUE(oracle_nstep(sys, ex_omega(), ex_u(), N, lo));
  ASSERT_FALSE(oracle_nstep(sys, ex_omega(), ex_u(), N, hi));
  for (int i = 0; i < 50; ++i) {
    const double mid = 0.5 * (lo + hi);
    (oracle_nstep(sys, ex_omega(), ex_u(), N, mid) ? lo : hi) = mid;
  }
  EXPECT_NEAR(1.0 / lo, kBeta5, 1e-6);
  const double alpha = 1.0 / kBeta5;
  EXPECT_TRUE(oracle_nstep(sys, ex_omega(), ex_u(), N, alpha * (1 - 1e-7)));
  EXPECT_FALSE(oracle_nstep(sys, ex_omega(), ex_u(), N, 1.05 * alpha));
}

TEST(SolveBeta, MonotoneAlongMultiplesOnRandomSystems) {
  std::mt19937_64 rng(77);
  int checked = 0;
  for (int trial = 0; trial < 30 && checked < 8; ++trial) {
    const LinearSystem sys = testing::random_planar_system(rng);
    const Polyhedron omega = testing::random_polygon(rng, 5, 0.5, 1.5);
    const auto b2 = solve_beta(sys, omega, ex_u(), 2);
    const auto b4 = solve_beta(sys, omega, ex_u(), 4);
    const auto b8 = solve_beta(sys, omega, ex_u(), 8);
    if (!b2 || !b4 || !b8) continue;
    EXPECT_LE(b4->beta, b2->beta + 1e-7);
    EXPECT_LE(b8->beta, b4->beta + 1e-7);
    ++checked;
  }
  EXPECT_GE(checked, 4);
}

TEST(SolveBeta, OracleConfirmsEveryScaledSeed) {
  std::mt19937_64 rng(88);
  int confirmed = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const LinearSystem sys = testing::random_planar_system(rng);
    const Polyhedron omega = testing::random_polygon(rng, 5, 0.5, 1.5);
    const int N = 1 + trial % 4;
    const auto r = solve_beta(sys, omega, ex_u(), N);
    if (!r || !r->alpha) continue;
    EXPECT_TRUE(oracle_nstep(sys, omega, ex_u(), N, *r->alpha * (1 - 1e-6))) << "trial " << trial;
    ++confirmed;
  }
  EXPECT_GT(confirmed, 5);
}

TEST(Stop1, DimensionsMatchClosedForm) {
  const LiftDims d = stop1_dims(2, 1, 4, 2, 5);
  EXPECT_EQ(d.n_bar, 6 * 2 + 15 * 1 + 5);
  EXPECT_EQ(d.n_bar, 32);
  const LiftedInclusion p = stop1_problem(ex1_system(), ex_omega(), ex_u(), 5, 1.0);
  EXPECT_EQ(p.n_bar(), 32);
  EXPECT_EQ(p.n_bar(), d.n_bar);
  EXPECT_EQ(p.n_g_bar(), d.n_g_bar);
  EXPECT_EQ(p.n_h_bar(), d.n_h_bar);
}

TEST(Stop1, ImpliedByNStepCondition) {
  const LinearSystem sys = ex1_system();
  const double alpha = 1.0 / kBeta5 * (1 - 1e-6);
  ASSERT_TRUE(check_nstep(sys, scale(ex_omega(), alpha), ex_u(), 5).has_value());
  const auto cert = check_stop1_lp(sys, ex_omega(), ex_u(), 5, alpha);
  ASSERT_TRUE(cert.has_value());
  EXPECT_TRUE(verify_certificate(stop1_problem(sys, ex_omega(), ex_u(), 5, alpha), *cert));

  std::mt19937_64 rng(99);
  int implied = 0;
  for (int trial = 0; trial < 40 && implied < 10; ++trial) {
    const LinearSystem s = testing::random_planar_system(rng);
    const Polyhedron omega = testing::random_polygon(rng, 4, 0.5, 1.5);
    const int N = 2 + trial % 3;
    const auto r = solve_beta(s, omega, ex_u(), N);
    if (!r || !r->alpha) continue;
    const double a = *r->alpha * (1 - 1e-6);
    EXPECT_TRUE(check_stop1_lp(s, omega, ex_u(), N, a).has_value()) << "trial " << trial;
    ++implied;
  }
  EXPECT_EQ(implied, 10);
}

TEST(Stop1, SearchFindsLargerAlphaThanNStep) {
  const LinearSystem sys = ex1_system();
  const double alpha5 = 1.0 / kBeta5;
  const auto s = stop1_alpha_search(sys, ex_omega(), ex_u(), 5, alpha5 * (1 - 1e-6));
  ASSERT_TRUE(s.has_value());
  EXPECT_GT(s->alpha, alpha5 * 1.001);
  EXPECT_GT(s->alpha_fail, s->alpha);
  EXPECT_TRUE(check_stop1_lp(sys, ex_omega(), ex_u(), 5, s->alpha).has_value());
  EXPECT_FALSE(check_stop1_lp(sys, ex_omega(), ex_u(), 5, s->alpha_fail).has_value());
  // The certified α obeys αΩ ⊆ co(∪ Ω_k^α) geometrically.
  const Polygon2D hull = oracle2d::explicit_omega_inf(sys, ex_omega(), ex_u(), 5, s->alpha);
  EXPECT_TRUE(oracle2d::contains_by_vertices(Polygon2D::from_hrep(ex_omega()).scaled(s->alpha), hull, 1e-7));
}

}  // namespace
}  // namespace invset
