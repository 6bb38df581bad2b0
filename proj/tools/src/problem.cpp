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

#include "invset/cli/problem.hpp"

#include <array>
#include <fstream>
#include <sstream>

namespace invset::cli {

namespace {

using nlohmann::json;

constexpr std::array<std::pair<Mode, std::string_view>, 7> kModes{{
    {Mode::Beta, "beta"},
    {Mode::NStepCheck, "nstep_check"},
    {Mode::Stop1Grid, "stop1_grid"},
    {Mode::Sigma, "sigma"},
    {Mode::MuNStep, "mu_nstep"},
    {Mode::MuFull, "mu_full"},
    {Mode::Membership, "membership"},
}};

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

}  // namespace

std::string_view to_string(Mode mode) {
  for (const auto& [m, name] : kModes) {
    if (m == mode) return name;
  }
  return "unknown";
}

Mode parse_mode(std::string_view text) {
  for (const auto& [m, name] : kModes) {
    if (name == text) return m;
  }
  throw InputError("unknown mode '" + std::string(text) + "'");
}

void ProblemFile::validate() const {
  const auto n = sys.A.rows();
  require(n >= 1 && sys.A.cols() == n, "A must be square and nonempty");
  require(sys.B.rows() == n, "B must have as many rows as A");
  require(sys.A.allFinite() && sys.B.allFinite(), "A and B must be finite");
  require(omega.dim() == n, "Omega dimension != n");
  require(u_set.dim() == sys.B.cols(), "U dimension != number of inputs");
  require(omega.contains_origin(), "Omega must contain the origin");
  require(u_set.contains_origin(), "U must contain the origin");
  if (x_set) {
    require(x_set->dim() == n, "X dimension != n");
    require(x_set->contains_origin(), "X must contain the origin");
  }
  require(!horizons.empty(), "N or N_list is required");
  for (int N : horizons) require(N >= 1, "horizons must be >= 1");
  if (alpha) require(*alpha > 0.0, "alpha must be > 0");
  for (const Eigen::VectorXd& q : query_points) require(q.size() == n, "query point dimension != n");
  const bool needs_x = mode == Mode::Sigma || mode == Mode::MuNStep || mode == Mode::MuFull;
  require(!needs_x || x_set.has_value(), std::string(to_string(mode)) + " requires X");
  require(mode != Mode::Membership || !query_points.empty(), "membership requires query_points");
}

json matrix_to_json(const Eigen::MatrixXd& M) {
  std::vector<double> data;
  data.reserve(static_cast<size_t>(M.size()));
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j) data.push_back(M(i, j));
  return {{"rows", M.rows()}, {"cols", M.cols()}, {"data", data}};
}

Eigen::MatrixXd matrix_from_json(const json& j, const char* what) {
  const std::string w(what);
  require(j.is_object() && j.contains("rows") && j.contains("cols") && j.contains("data"),
          w + ": expected {rows, cols, data}");
  const long r = j.at("rows").get<long>();
  const long c = j.at("cols").get<long>();
  const auto data = j.at("data").get<std::vector<double>>();
  require(r >= 0 && c >= 0, w + ": negative shape");
  require(static_cast<long>(data.size()) == r * c, w + ": data length != rows·cols");
  Eigen::MatrixXd M(r, c);
  for (long i = 0; i < r; ++i)
    for (long k = 0; k < c; ++k) M(i, k) = data[static_cast<size_t>(i * c + k)];
  return M;
}

json polyhedron_to_json(const Polyhedron& P) {
  const Eigen::VectorXd& h = P.h();
  return {{"H", matrix_to_json(P.H())}, {"h", std::vector<double>(h.data(), h.data() + h.size())}};
}

Polyhedron polyhedron_from_json(const json& j, const char* what) {
  const std::string w(what);
  require(j.is_object() && j.contains("H") && j.contains("h"), w + ": expected {H, h}");
  Eigen::MatrixXd H = matrix_from_json(j.at("H"), what);
  const auto hv = j.at("h").get<std::vector<double>>();
  require(static_cast<long>(hv.size()) == H.rows(), w + ": length of h != rows of H");
  Eigen::VectorXd h = Eigen::Map<const Eigen::VectorXd>(hv.data(), static_cast<Eigen::Index>(hv.size()));
  require(H.allFinite() && h.allFinite(), w + ": non-finite entries");
  return Polyhedron(std::move(H), std::move(h));
}

json to_json(const ProblemFile& p) {
  json j;
  j["name"] = p.name;
  j["mode"] = std::string(to_string(p.mode));
  j["A"] = matrix_to_json(p.sys.A);
  j["B"] = matrix_to_json(p.sys.B);
  j["Omega"] = polyhedron_to_json(p.omega);
  j["U"] = polyhedron_to_json(p.u_set);
  if (p.x_set) j["X"] = polyhedron_to_json(*p.x_set);
  if (p.horizons.size() == 1) {
    j["N"] = p.horizons.front();
  } else {
    j["N_list"] = p.horizons;
  }
  if (p.alpha) j["alpha"] = *p.alpha;
  if (!p.query_points.empty()) {
    json pts = json::array();
    for (const Eigen::VectorXd& q : p.query_points) {
      pts.push_back(std::vector<double>(q.data(), q.data() + q.size()));
    }
    j["query_points"] = pts;
  }
  if (p.seed) j["seed"] = *p.seed;
  if (p.export_certificate) j["export_certificate"] = true;
  return j;
}

ProblemFile problem_from_json(const json& j) {
  require(j.is_object(), "problem file must be a JSON object");
  ProblemFile p;
  try {
    p.name = j.value("name", std::string("problem"));
    p.mode = parse_mode(j.value("mode", std::string("beta")));
    p.sys.A = matrix_from_json(j.at("A"), "A");
    p.sys.B = matrix_from_json(j.at("B"), "B");
    p.omega = polyhedron_from_json(j.at("Omega"), "Omega");
    p.u_set = polyhedron_from_json(j.at("U"), "U");
    if (j.contains("X")) p.x_set = polyhedron_from_json(j.at("X"), "X");
    if (j.contains("N_list")) {
      p.horizons = j.at("N_list").get<std::vector<int>>();
    } else if (j.contains("N")) {
      p.horizons = {j.at("N").get<int>()};
    }
    if (j.contains("alpha")) p.alpha = j.at("alpha").get<double>();
    if (j.contains("query_points")) {
      for (const auto& q : j.at("query_points")) {
        const auto v = q.get<std::vector<double>>();
        p.query_points.emplace_back(
            Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
      }
    }
    if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
    p.export_certificate = j.value("export_certificate", false);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed problem file: ") + e.what());
  }
  p.validate();
  return p;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  return problem_from_json(j);
}

std::string dump_problem(const ProblemFile& p) { return to_json(p).dump(2) + "\n"; }

}  // namespace invset::cli
