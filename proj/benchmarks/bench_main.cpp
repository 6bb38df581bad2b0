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

#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include <random>

#include "invset/invariant_set.hpp"
#include "invset/nstep.hpp"
#include "invset/oracle2d.hpp"

#ifdef INVSET_BENCH_EX4
#include "invset/cli/examples.hpp"
#endif

namespace {

using namespace invset;

LinearSystem ex1() {
  return {(Eigen::Matrix2d() << 1.2, 1.0, 0.0, 1.2).finished(), Eigen::Vector2d(0.5, 0.3)};
}

Polyhedron input_set() {
  return box(Eigen::VectorXd::Constant(1, -2.0), Eigen::VectorXd::Constant(1, 2.0));
}

void BM_SolveBetaEx1(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_beta(ex1(), unit_box(2), input_set(), N));
}
BENCHMARK(BM_SolveBetaEx1)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

#ifdef INVSET_BENCH_EX4
void BM_SolveBetaEx4(benchmark::State& state) {
  const auto p = cli::example4(1);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_beta(p.sys, p.omega, p.u_set, N));
}
BENCHMARK(BM_SolveBetaEx4)->Arg(3)->Arg(5)->Arg(9)->Arg(15)->Unit(benchmark::kMillisecond);
#endif

void BM_MembershipEx1(benchmark::State& state) {
  const InvariantSetSpec spec{ex1(), unit_box(2), input_set(), static_cast<int>(state.range(0)), 1.3681142209387065};
  const ImplicitPolytope S = spec.lifted();
  const Eigen::Vector2d x(2.0, -1.0);
  for (auto _ : state) benchmark::DoNotOptimize(member_implicit(S, x));
}
BENCHMARK(BM_MembershipEx1)->Arg(5)->Arg(20)->Unit(benchmark::kMicrosecond);

void BM_MinkowskiSum2D(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<oracle2d::Point> a, b;
  for (int i = 0; i < state.range(0); ++i) {
    a.emplace_back(g(rng), g(rng));
    b.emplace_back(g(rng), g(rng));
  }
  const auto P = oracle2d::Polygon2D::hull(a);
  const auto Q = oracle2d::Polygon2D::hull(b);
  for (auto _ : state) benchmark::DoNotOptimize(minkowski_sum_2d(P, Q));
}
BENCHMARK(BM_MinkowskiSum2D)->Arg(100)->Arg(10000);

void BM_SigmaSequence(benchmark::State& state) {
  const auto S0 = oracle2d::Polygon2D::box(-1000, 1000, -1000, 1000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle2d::outer_approx_sequence(ex1(), input_set(), S0, 60));
  }
}
BENCHMARK(BM_SigmaSequence)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
