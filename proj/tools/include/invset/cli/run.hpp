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

#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "invset/cli/problem.hpp"
#include "invset/lp.hpp"
#include "invset/oracle2d.hpp"

namespace invset::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInconclusive = 2;

struct RunOptions {
  double tol = 1e-7;
  // nstep_check: search N = 1..nmax. Other modes: run the single horizon nmax.
  std::optional<int> nmax;

  SolverConfig solver() const;
};

struct RunResult {
  int exit_code = kExitOk;
  nlohmann::json json;
};

// Every scaling reported in the result has been re-verified independently of
// the LP that produced it.
RunResult run(const ProblemFile& problem, const RunOptions& options = {});

// Σ_k iteration settings shared by export_polygons and compare_rays.
inline constexpr double kSigma0Radius = 1000.0;
inline constexpr int kSigmaSteps = 60;

// Named CCW vertex lists for a planar problem: Omega, Omega_alpha, Omega_N_alpha,
// Omega_inf_alpha, Sigma_0..Sigma_60 and, with X, X, sigma_Omega_inf_alpha and
// mu_set. Throws InputError unless n = 2.
nlohmann::json export_polygons(const ProblemFile& problem, const RunOptions& options = {});

nlohmann::json polygon_to_json(const std::string& name, const oracle2d::Polygon2D& P);

struct RayRow {
  int index = 0;
  double r_omega = 0.0;
  double r_sigma = 0.0;
  double ratio = 0.0;
};

struct RayOptions {
  int directions = 100;
  std::uint64_t seed = 0;
  // Horizon for Ω∞^α; the last horizon of the problem when absent.
  std::optional<int> horizon;
  int bisection_iterations = 60;
};

// Unit directions drawn as normalized Gaussians from the seed.
std::vector<Eigen::VectorXd> random_directions(int n, int count, std::uint64_t seed);

// Requires the state to split into decoupled 2-D blocks (A block diagonal, each
// input acting on one block, U a product over blocks). Σ∞ is outer-approximated
// per block by the Σ_k iteration and combined as a Cartesian product.
std::vector<RayRow> compare_rays(const ProblemFile& problem, const RayOptions& options,
                                 const SolverConfig& config = {});

std::string rays_csv(const std::vector<RayRow>& rows);

}  // namespace invset::cli
