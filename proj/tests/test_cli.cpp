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

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "invset/cli/examples.hpp"
#include "invset/cli/problem.hpp"
#include "invset/cli/run.hpp"
#include "invset/nstep.hpp"
#include "invset/oracle2d.hpp"

namespace invset::cli {
namespace {

constexpr double kBeta5 = 0.73093312290392565;

ProblemFile with_mode(ProblemFile p, Mode mode, std::vector<int> horizons) {
  p.mode = mode;
  p.horizons = std::move(horizons);
  return p;
}

TEST(Problem, ModeNamesRoundTrip) {
  for (Mode m : {Mode::Beta, Mode::NStepCheck, Mode::Stop1Grid, Mode::Sigma, Mode::MuNStep, Mode::MuFull,
                 Mode::Membership}) {
    EXPECT_EQ(parse_mode(to_string(m)), m);
  }
  EXPECT_THROW(parse_mode("gamma"), InputError);
}

TEST(Problem, JsonRoundTripIsExact) {
  for (const ProblemFile& p : {example1(), example2(), example3(), example4(11)}) {
    const std::string text = dump_problem(p);
    const ProblemFile q = problem_from_json(nlohmann::json::parse(text));
    EXPECT_EQ(dump_problem(q), text);
    EXPECT_EQ(q.sys.A, p.sys.A);
    EXPECT_EQ(q.sys.B, p.sys.B);
    EXPECT_EQ(q.omega.H(), p.omega.H());
    EXPECT_EQ(q.u_set.h(), p.u_set.h());
    EXPECT_EQ(q.horizons, p.horizons);
  }
}

TEST(Problem, MatrixJsonIsRowMajor) {
  const Eigen::MatrixXd M = (Eigen::MatrixXd(2, 3) << 1, 2, 3, 4, 5, 6).finished();
  const nlohmann::json j = matrix_to_json(M);
  EXPECT_EQ(j["data"], (std::vector<double>{1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(matrix_from_json(j, "M"), M);
}

TEST(Problem, MalformedInputsAreRejected) {
  nlohmann::json good = to_json(example1());
  EXPECT_NO_THROW(problem_from_json(good));

  nlohmann::json j = good;
  j["A"]["data"].erase(0);
  EXPECT_THROW(problem_from_json(j), InputError);
  j = good;
  j["mode"] = "nope";
  EXPECT_THROW(problem_from_json(j), InputError);
  j = good;
  j.erase("N");
  EXPECT_THROW(problem_from_json(j), InputError);
  j = good;
  j["N"] = 0;
  EXPECT_THROW(problem_from_json(j), InputError);
  j = good;
  j["Omega"]["h"][0] = -0.5;  // 0 ∉ Ω
  EXPECT_THROW(problem_from_json(j), InputError);
  j = good;
  j["B"] = matrix_to_json(Eigen::MatrixXd::Ones(3, 1));
  EXPECT_THROW(problem_from_json(j), InputError);
  j = good;
  j.erase("N");
  j["N_list"] = {3, 5};
  EXPECT_EQ(problem_from_json(j).horizons, (std::vector<int>{3, 5}));
  EXPECT_THROW(load_problem("/nonexistent/problem.json"), InputError);
}

TEST(Examples, PlanarDataAreExact) {
  const ProblemFile e1 = example1();
  EXPECT_EQ(e1.sys.A, (Eigen::Matrix2d() << 1.2, 1.0, 0.0, 1.2).finished());
  EXPECT_EQ(e1.sys.B, Eigen::Vector2d(0.5, 0.3));
  EXPECT_TRUE(e1.u_set.contains(Eigen::VectorXd::Constant(1, 2.0)));
  EXPECT_FALSE(e1.u_set.contains(Eigen::VectorXd::Constant(1, 2.001)));
  EXPECT_EQ(example2().sys.A, (Eigen::Matrix2d() << 1.2, 1.0, 0.0, 0.0).finished());
  const ProblemFile e3 = example3();
  ASSERT_TRUE(e3.x_set.has_value());
  EXPECT_TRUE(e3.x_set->contains(Eigen::Vector2d(-10.0, 2.0)));
  EXPECT_TRUE(e3.x_set->contains(Eigen::Vector2d(5.0, -1.0)));
  EXPECT_FALSE(e3.x_set->contains(Eigen::Vector2d(5.01, 0.0)));
  EXPECT_EQ(generate_example("ex2", std::nullopt).sys.A, example2().sys.A);
  EXPECT_THROW(generate_example("ex4", std::nullopt), InputError);
  EXPECT_THROW(generate_example("ex9", std::nullopt), InputError);
}

TEST(Examples, FourIsDeterministicAndBlockStructured) {
  const ProblemFile p = example4(1);
  EXPECT_EQ(dump_problem(p), dump_problem(example4(1)));
  EXPECT_NE(dump_problem(p), dump_problem(example4(2)));
  ASSERT_EQ(p.sys.n(), 20);
  ASSERT_EQ(p.sys.m(), 10);
  EXPECT_EQ(p.horizons, (std::vector<int>{3, 5, 9, 15}));
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      if (i / 2 != j / 2) {
        EXPECT_EQ(p.sys.A(i, j), 0.0);
      } else {
        EXPECT_LE(std::abs(p.sys.A(i, j)), kEx4EntryBound);
      }
    }
    for (int k = 0; k < 10; ++k) {
      if (i / 2 != k) {
        EXPECT_EQ(p.sys.B(i, k), 0.0);
      }
    }
  }
  for (int b = 0; b < kEx4Blocks; ++b) {
    const Eigen::Matrix2d A = p.sys.A.block(2 * b, 2 * b, 2, 2);
    const Eigen::Vector2d Bb = p.sys.B.block(2 * b, b, 2, 1);
    for (const auto& lambda : A.eigenvalues()) EXPECT_GT(std::abs(lambda), 1.0) << "block " << b;
    Eigen::Matrix2d C;
    C << Bb, A * Bb;
    EXPECT_GE(std::abs(C.determinant()), 1e-6);
  }
  EXPECT_TRUE(p.omega.contains(Eigen::VectorXd::Ones(20)));
  EXPECT_TRUE(p.u_set.contains(Eigen::VectorXd::Constant(10, 2.0)));
  EXPECT_FALSE(p.u_set.contains(Eigen::VectorXd::Constant(10, 2.1)));
}

// Decoupled blocks: the 20-state β is the largest per-block β, and each block
// β is confirmed by bisection on the explicit planar N-step set.
TEST(Examples, FourBetaIsTheWorstBlock) {
  const ProblemFile p = example4(1);
  const Polyhedron omega2 = unit_box(2);
  const Polyhedron u1 = box(Eigen::VectorXd::Constant(1, -2.0), Eigen::VectorXd::Constant(1, 2.0));
  for (int N : {3, 9}) {
    const auto full = solve_beta(p.sys, p.omega, p.u_set, N);
    ASSERT_TRUE(full.has_value());
    double worst = 0.0;
    int worst_block = 0;
    for (int b = 0; b < kEx4Blocks; ++b) {
      const LinearSystem blk{p.sys.A.block(2 * b, 2 * b, 2, 2), p.sys.B.block(2 * b, b, 2, 1)};
      const auto r = solve_beta(blk, omega2, u1, N);
      ASSERT_TRUE(r.has_value());
      if (r->beta > worst) {
        worst = r->beta;
        worst_block = b;
      }
    }
    EXPECT_NEAR(full->beta, worst, 1e-6 * worst) << "N " << N;

    const LinearSystem blk{p.sys.A.block(2 * worst_block, 2 * worst_block, 2, 2),
                           p.sys.B.block(2 * worst_block, worst_block, 2, 1)};
    auto holds = [&](double alpha) {
      const auto seed = oracle2d::Polygon2D::from_hrep(omega2).scaled(alpha);
      return oracle2d::contains_by_vertices(seed, oracle2d::explicit_omega_k(blk, omega2, u1, N, alpha), 1e-9);
    };
    double lo = 0.5 / worst, hi = 2.0 / worst;
    ASSERT_TRUE(holds(lo));
    ASSERT_FALSE(holds(hi));
    for (int i = 0; i < 50; ++i) {
      const double mid = 0.5 * (lo + hi);
      (holds(mid) ? lo : hi) = mid;
    }
    EXPECT_NEAR(1.0 / lo, worst, 1e-6 * worst);
  }
}

// β_{kN} <= β_N along multiples; 9 vs 15 is not ordered in general.
TEST(Examples, FourBetaMonotoneAlongMultiples) {
  const ProblemFile p = example4(1);
  std::map<int, double> beta;
  for (int N : {3, 5, 9, 15}) {
    const auto r = solve_beta(p.sys, p.omega, p.u_set, N);
    ASSERT_TRUE(r.has_value());
    beta[N] = r->beta;
  }
  EXPECT_LE(beta[9], beta[3] + 1e-7);
  EXPECT_LE(beta[15], beta[5] + 1e-7);
  EXPECT_LE(beta[15], beta[3] + 1e-7);
}

TEST(Run, BetaOnExampleOne) {
  const RunResult r = run(example1());
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(r.json["status"], "ok");
  const auto& row = r.json["runs"][0];
  EXPECT_EQ(row["N"], 5);
  EXPECT_NEAR(row["beta"].get<double>(), kBeta5, 1e-7);
  EXPECT_NEAR(row["alpha"].get<double>(), 1.0 / kBeta5, 1e-6);
  EXPECT_TRUE(row["verified"].get<bool>());
}

TEST(Run, NStepCheckExitCodes) {
  const RunResult fail = run(with_mode(example1(), Mode::NStepCheck, {2}));
  EXPECT_EQ(fail.exit_code, kExitInconclusive);
  EXPECT_EQ(fail.json["status"], "infeasible");
  const RunResult pass = run(with_mode(example1(), Mode::NStepCheck, {3}));
  EXPECT_EQ(pass.exit_code, kExitOk);
  RunOptions search;
  search.nmax = 2;
  EXPECT_EQ(run(with_mode(example1(), Mode::NStepCheck, {5}), search).exit_code, kExitInconclusive);
  search.nmax = 6;
  EXPECT_EQ(run(with_mode(example1(), Mode::NStepCheck, {5}), search).exit_code, kExitOk);
  ProblemFile scaled = with_mode(example1(), Mode::NStepCheck, {5});
  scaled.alpha = 1.05 / kBeta5;
  EXPECT_EQ(run(scaled).exit_code, kExitInconclusive);
}

TEST(Run, ConstrainedModesOnExampleThree) {
  const RunResult sigma = run(with_mode(example3(), Mode::Sigma, {5}));
  EXPECT_EQ(sigma.exit_code, kExitOk);
  EXPECT_NEAR(sigma.json["runs"][0]["sigma"].get<double>(), 0.42658809158775951, 1e-7);
  const RunResult mu = run(with_mode(example3(), Mode::MuNStep, {5, 10}));
  EXPECT_EQ(mu.exit_code, kExitOk);
  ASSERT_EQ(mu.json["runs"].size(), 2u);
  for (const auto& row : mu.json["runs"]) EXPECT_NEAR(row["mu"].get<double>(), 1.0, 1e-7);
  EXPECT_THROW(run(with_mode(example1(), Mode::Sigma, {5})), InputError);  // needs X
}

TEST(Run, MembershipQueries) {
  ProblemFile p = with_mode(example1(), Mode::Membership, {5});
  p.query_points = {Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(4.0, -2.0), Eigen::Vector2d(4.7, 0.0)};
  const RunResult r = run(p);
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(r.json["runs"][0]["members"], (std::vector<bool>{true, true, false}));
}

TEST(Export, PolygonsMatchOracle) {
  const nlohmann::json j = export_polygons(example1());
  std::set<std::string> names;
  for (const auto& poly : j["polygons"]) names.insert(poly["name"].get<std::string>());
  for (const char* n : {"Omega", "Omega_alpha", "Omega_N_alpha", "Omega_inf_alpha", "Sigma_0", "Sigma_60"}) {
    EXPECT_TRUE(names.count(n)) << n;
  }
  for (const auto& poly : j["polygons"]) {
    if (poly["name"] == "Omega_inf_alpha") {
      EXPECT_EQ(poly["vertices"].size(), 22u);
    }
  }
  const nlohmann::json j3 = export_polygons(example3());
  std::set<std::string> names3;
  for (const auto& poly : j3["polygons"]) names3.insert(poly["name"].get<std::string>());
  EXPECT_TRUE(names3.count("mu_set"));
  EXPECT_TRUE(names3.count("sigma_Omega_inf_alpha"));
  EXPECT_THROW(export_polygons(example4(1)), InputError);
}

TEST(Rays, DirectionsAreSeededUnitVectors) {
  const auto a = random_directions(20, 5, 7);
  const auto b = random_directions(20, 5, 7);
  ASSERT_EQ(a.size(), 5u);
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i], b[i]);
    EXPECT_NEAR(a[i].norm(), 1.0, 1e-14);
  }
  EXPECT_NE(random_directions(20, 1, 8)[0], a[0]);
}

TEST(Rays, PlanarRatiosAgainstOracle) {
  RayOptions opt;
  opt.directions = 6;
  opt.seed = 4;
  const ProblemFile p = example1();
  const auto rows = compare_rays(p, opt);
  ASSERT_EQ(rows.size(), 6u);
  const auto dirs = random_directions(2, 6, 4);
  const oracle2d::Polygon2D P =
      oracle2d::explicit_omega_inf(p.sys, p.omega, p.u_set, 5, 1.0 / kBeta5);
  for (size_t i = 0; i < rows.size(); ++i) {
    const Eigen::Vector2d v = dirs[i];
    EXPECT_NEAR(P.signed_distance(rows[i].r_omega * v), 0.0, 1e-6);
    EXPECT_GT(rows[i].r_sigma, 0.0);
    EXPECT_LE(rows[i].ratio, 1.0 + 1e-9);
    EXPECT_DOUBLE_EQ(rows[i].ratio, rows[i].r_omega / rows[i].r_sigma);
  }
  const std::string csv = rays_csv(rows);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "direction,r_omega,r_sigma,ratio");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
}

}  // namespace
}  // namespace invset::cli
