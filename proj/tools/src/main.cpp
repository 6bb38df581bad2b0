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

// invset command-line driver. Exit codes: 0 ok, 2 infeasible or inconclusive, 1 error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "invset/cli/examples.hpp"
#include "invset/cli/problem.hpp"
#include "invset/cli/run.hpp"

namespace {

using namespace invset::cli;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Control invariant sets for linear systems via LP inclusion certificates"};
  app.require_subcommand(1);

  std::string problem_path;
  std::string out_path;
  std::string polygons_path;
  RunOptions run_opts;
  std::optional<int> nmax;
  auto* run_cmd = app.add_subcommand("run", "Solve a problem file");
  run_cmd->add_option("problem", problem_path, "Problem JSON")->required();
  run_cmd->add_option("--out", out_path, "Result JSON (stdout when omitted)");
  run_cmd->add_option("--export-polygons", polygons_path, "Write 2-D polygon data as JSON");
  run_cmd->add_option("--tol", run_opts.tol, "Equality and inequality tolerance")->capture_default_str();
  run_cmd->add_option("--nmax", nmax, "Horizon bound (nstep_check searches N = 1..K)");

  std::string example_id;
  std::optional<std::uint64_t> seed;
  std::string example_out;
  auto* ex_cmd = app.add_subcommand("example", "Write a built-in example problem");
  ex_cmd->add_option("id", example_id, "ex1, ex2, ex3 or ex4")->required();
  ex_cmd->add_option("--seed", seed, "RNG seed (required for ex4)");
  ex_cmd->add_option("--out", example_out, "Problem JSON (stdout when omitted)");

  std::string rays_problem;
  RayOptions ray_opts;
  std::optional<int> horizon;
  double ray_tol = 1e-7;
  auto* rays_cmd = app.add_subcommand("compare-rays", "Ray extents of Ω∞^α against the Σ outer bound (CSV)");
  rays_cmd->add_option("problem", rays_problem, "Problem JSON")->required();
  rays_cmd->add_option("--directions", ray_opts.directions, "Number of random directions")->required();
  rays_cmd->add_option("--seed", ray_opts.seed, "Direction RNG seed")->required();
  rays_cmd->add_option("--horizon", horizon, "Horizon N (last horizon of the problem by default)");
  rays_cmd->add_option("--tol", ray_tol, "Solver tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*run_cmd) {
      run_opts.nmax = nmax;
      const ProblemFile problem = load_problem(problem_path);
      const RunResult result = run(problem, run_opts);
      write_text(out_path, result.json.dump(2) + "\n");
      if (!polygons_path.empty()) write_text(polygons_path, export_polygons(problem, run_opts).dump(2) + "\n");
      return result.exit_code;
    }
    if (*ex_cmd) {
      write_text(example_out, dump_problem(generate_example(example_id, seed)));
      return kExitOk;
    }
    if (*rays_cmd) {
      ray_opts.horizon = horizon;
      RunOptions cfg;
      cfg.tol = ray_tol;
      const ProblemFile problem = load_problem(rays_problem);
      std::cout << rays_csv(compare_rays(problem, ray_opts, cfg.solver()));
      return kExitOk;
    }
  } catch (const invset::SolverError& e) {
    std::cerr << "invset: inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "invset: error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
