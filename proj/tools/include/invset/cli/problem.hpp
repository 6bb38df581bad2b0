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

#include <Eigen/Dense>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "invset/polyhedra.hpp"
#include "invset/system.hpp"

namespace invset::cli {

enum class Mode { Beta, NStepCheck, Stop1Grid, Sigma, MuNStep, MuFull, Membership };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

// Malformed input files. Maps to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProblemFile {
  std::string name;
  LinearSystem sys;
  Polyhedron omega;
  Polyhedron u_set;
  std::optional<Polyhedron> x_set;
  Mode mode = Mode::Beta;
  std::vector<int> horizons;  // N, or every entry of N_list
  // Scale applied to Ω for nstep_check / membership; solve_beta's α when absent.
  std::optional<double> alpha;
  std::vector<Eigen::VectorXd> query_points;
  std::optional<std::uint64_t> seed;
  bool export_certificate = false;

  // Throws InputError on inconsistent shapes or a set that misses the origin.
  void validate() const;
};

// Matrices are {"rows", "cols", "data"} with data row-major.
nlohmann::json matrix_to_json(const Eigen::MatrixXd& M);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, const char* what);
nlohmann::json polyhedron_to_json(const Polyhedron& P);
Polyhedron polyhedron_from_json(const nlohmann::json& j, const char* what);

nlohmann::json to_json(const ProblemFile& p);
ProblemFile problem_from_json(const nlohmann::json& j);

ProblemFile load_problem(const std::string& path);
// Two-space indented JSON with a trailing newline; the same problem gives the same bytes.
std::string dump_problem(const ProblemFile& p);

}  // namespace invset::cli
