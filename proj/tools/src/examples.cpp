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

#include "invset/cli/examples.hpp"

#include <random>
#include <string>

namespace invset::cli {

namespace {

Polyhedron interval(double lo, double hi) {
  return box(Eigen::VectorXd::Constant(1, lo), Eigen::VectorXd::Constant(1, hi));
}

ProblemFile planar(std::string name, const Eigen::Matrix2d& A) {
  ProblemFile p;
  p.name = std::move(name);
  p.sys = {A, Eigen::Vector2d(0.5, 0.3)};
  p.omega = unit_box(2);
  p.u_set = interval(-2.0, 2.0);
  p.mode = Mode::Beta;
  p.horizons = {5};
  return p;
}

}  // namespace

ProblemFile example1() { return planar("ex1", (Eigen::Matrix2d() << 1.2, 1.0, 0.0, 1.2).finished()); }

ProblemFile example2() {
  ProblemFile p = planar("ex2", (Eigen::Matrix2d() << 1.2, 1.0, 0.0, 0.0).finished());
  p.horizons = {10};
  return p;
}

ProblemFile example3() {
  ProblemFile p = planar("ex3", (Eigen::Matrix2d() << 1.2, 1.0, 0.0, 1.2).finished());
  p.x_set = box(Eigen::Vector2d(-10.0, -1.0), Eigen::Vector2d(5.0, 2.0));
  p.mode = Mode::MuNStep;
  p.horizons = {15};
  return p;
}

ProblemFile example4(std::uint64_t seed) {
  constexpr int n = 2 * kEx4Blocks;
  constexpr int m = kEx4Blocks;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> entry(-kEx4EntryBound, kEx4EntryBound);

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, m);
  int draws = 0;
  for (int i = 0; i < kEx4Blocks; ++i) {
    for (;;) {
      if (++draws > kEx4MaxDraws) throw InputError("ex4: rejection sampling exceeded the draw limit");
      Eigen::Matrix2d Ai;
      Eigen::Vector2d Bi;
      for (int k = 0; k < 4; ++k) Ai(k / 2, k % 2) = entry(rng);
      for (int k = 0; k < 2; ++k) Bi[k] = entry(rng);
      // Every pole unstable keeps Σ∞ bounded, so clipping by Σ_0 never decides r_Σ.
      const double slowest = Ai.eigenvalues().cwiseAbs().minCoeff();
      Eigen::Matrix2d ctrb;
      ctrb << Bi, Ai * Bi;
      if (slowest <= 1.0 || std::abs(ctrb.determinant()) < 1e-6) continue;
      A.block<2, 2>(2 * i, 2 * i) = Ai;
      B.block<2, 1>(2 * i, i) = Bi;
      break;
    }
  }
  ProblemFile p;
  p.name = "ex4";
  p.sys = {A, B};
  p.omega = unit_box(n);
  p.u_set = scale(unit_box(m), 2.0);
  p.mode = Mode::Beta;
  p.horizons = {3, 5, 9, 15};
  p.seed = seed;
  return p;
}

ProblemFile generate_example(std::string_view id, std::optional<std::uint64_t> seed) {
  if (id == "ex1") return example1();
  if (id == "ex2") return example2();
  if (id == "ex3") return example3();
  if (id == "ex4") {
    if (!seed) throw InputError("ex4 requires --seed");
    return example4(*seed);
  }
  throw InputError("unknown example '" + std::string(id) + "' (expected ex1, ex2, ex3 or ex4)");
}

}  // namespace invset::cli
