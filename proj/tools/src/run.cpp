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

#include "invset/cli/run.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>

#include "invset/inclusion.hpp"
#include "invset/invariant_set.hpp"
#include "invset/nstep.hpp"
#include "invset/state_constraints.hpp"

namespace invset::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

json dims_json(const LiftDims& d) {
  return {{"n_bar", d.n_bar}, {"n_g_bar", d.n_g_bar}, {"n_h_bar", d.n_h_bar}};
}

json triplets_json(const Eigen::MatrixXd& M) {
  json t = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (std::abs(M(i, j)) > 1e-12) t.push_back({i, j, M(i, j)});
    }
  }
  return {{"rows", M.rows()}, {"cols", M.cols()}, {"triplets", t}};
}

json certificate_json(const InclusionCertificate& c) {
  json j;
  j["T"] = triplets_json(c.T);
  if (c.M) j["M"] = triplets_json(*c.M);
  if (c.offset) j["offset"] = std::vector<double>(c.offset->data(), c.offset->data() + c.offset->size());
  if (c.beta) j["beta"] = *c.beta;
  return j;
}

std::vector<int> horizons_for(const ProblemFile& p, const RunOptions& o) {
  if (o.nmax && p.mode != Mode::NStepCheck) return {*o.nmax};
  return p.horizons;
}

// Tracks the worst outcome over a run: ok < infeasible < unverified.
struct Verdict {
  bool infeasible = false;
  bool unverified = false;

  void fail() { infeasible = true; }
  void check(bool verified) { unverified = unverified || !verified; }
  std::string status() const {
    if (unverified) return "unverified";
    return infeasible ? "infeasible" : "ok";
  }
  int exit_code() const { return infeasible || unverified ? kExitInconclusive : kExitOk; }
};

json nstep_dims_json(const ProblemFile& p, int N) {
  return dims_json(nstep_dims(p.sys.n(), p.sys.m(), p.omega.rows(), p.u_set.rows(), N));
}

// solve_beta plus an independent certificate check.
struct BetaRun {
  std::optional<NStepResult> result;
  bool verified = false;
};

BetaRun beta_run(const ProblemFile& p, const Polyhedron& omega, int N, const SolverConfig& cfg) {
  BetaRun b;
  b.result = solve_beta(p.sys, omega, p.u_set, N, cfg);
  if (b.result) {
    const NStepMatrices mats = build_nstep_matrices(p.sys, omega, p.u_set, N);
    b.verified = verify_certificate(nstep_problem(mats, p.sys.n(), true), b.result->certificate, cfg);
  }
  return b;
}

json run_beta(const ProblemFile& p, const RunOptions& o, Verdict& v) {
  const SolverConfig cfg = o.solver();
  json runs = json::array();
  for (int N : horizons_for(p, o)) {
    const auto t0 = Clock::now();
    const BetaRun b = beta_run(p, p.omega, N, cfg);
    json r{{"N", N}, {"dims", nstep_dims_json(p, N)}};
    if (!b.result) {
      v.fail();
      r["status"] = "infeasible";
    } else {
      v.check(b.verified);
      r["status"] = "optimal";
      r["beta"] = b.result->beta;
      r["alpha"] = b.result->alpha ? json(*b.result->alpha) : json(nullptr);
      r["lp_vars"] = b.result->lp_vars;
      r["lp_rows"] = b.result->lp_rows;
      r["solve_ms"] = 1e3 * b.result->solve_seconds;
      r["verified"] = b.verified;
      if (p.export_certificate) r["certificate"] = certificate_json(b.result->certificate);
    }
    r["wall_ms"] = ms_since(t0);
    runs.push_back(r);
  }
  return {{"runs", runs}};
}

json run_nstep_check(const ProblemFile& p, const RunOptions& o, Verdict& v) {
  const SolverConfig cfg = o.solver();
  const Polyhedron omega = scale(p.omega, p.alpha.value_or(1.0), cfg);
  auto checked = [&](int N) {
    json r{{"N", N}, {"dims", nstep_dims_json(p, N)}};
    const auto cert = check_nstep(p.sys, omega, p.u_set, N, cfg);
    r["holds"] = cert.has_value();
    if (cert) {
      const NStepMatrices mats = build_nstep_matrices(p.sys, omega, p.u_set, N);
      const bool ok = verify_certificate(nstep_problem(mats, p.sys.n(), false), *cert, cfg);
      v.check(ok);
      r["verified"] = ok;
      if (p.export_certificate) r["certificate"] = certificate_json(*cert);
    }
    return r;
  };
  json out{{"alpha", p.alpha.value_or(1.0)}};
  if (o.nmax) {
    const auto t0 = Clock::now();
    const auto found = algorithm2_search(p.sys, omega, p.u_set, *o.nmax, cfg);
    out["nmax"] = *o.nmax;
    out["found_N"] = found ? json(*found) : json(nullptr);
    if (found) {
      out["runs"] = json::array({checked(*found)});
    } else {
      v.fail();
      out["runs"] = json::array();
    }
    out["search_ms"] = ms_since(t0);
    return out;
  }
  json runs = json::array();
  for (int N : horizons_for(p, o)) {
    const auto t0 = Clock::now();
    json r = checked(N);
    if (!r["holds"].get<bool>()) v.fail();
    r["wall_ms"] = ms_since(t0);
    runs.push_back(r);
  }
  out["runs"] = runs;
  return out;
}

// α from the problem when given, else from solve_beta at N.
std::optional<double> alpha_for(const ProblemFile& p, int N, const SolverConfig& cfg, json& r,
                                Verdict& v) {
  if (p.alpha) return p.alpha;
  const BetaRun b = beta_run(p, p.omega, N, cfg);
  if (!b.result || !b.result->alpha) {
    v.fail();
    r["status"] = b.result ? "unbounded_alpha" : "infeasible";
    return std::nullopt;
  }
  v.check(b.verified);
  r["beta"] = b.result->beta;
  return b.result->alpha;
}

json run_stop1(const ProblemFile& p, const RunOptions& o, Verdict& v) {
  const SolverConfig cfg = o.solver();
  json runs = json::array();
  for (int N : horizons_for(p, o)) {
    const auto t0 = Clock::now();
    json r{{"N", N},
           {"dims", dims_json(stop1_dims(p.sys.n(), p.sys.m(), p.omega.rows(), p.u_set.rows(), N))}};
    if (const auto a0 = alpha_for(p, N, cfg, r, v)) {
      r["alpha_start"] = *a0;
      const auto s = stop1_alpha_search(p.sys, p.omega, p.u_set, N, *a0, cfg);
      if (!s) {
        v.fail();
        r["status"] = "infeasible";
      } else {
        const auto cert = check_stop1_lp(p.sys, p.omega, p.u_set, N, s->alpha, cfg);
        const bool ok =
            cert && verify_certificate(stop1_problem(p.sys, p.omega, p.u_set, N, s->alpha), *cert, cfg);
        v.check(ok);
        r["status"] = "feasible";
        r["alpha"] = s->alpha;
        r["alpha_fail"] = s->alpha_fail == kInf ? json(nullptr) : json(s->alpha_fail);
        r["lp_solves"] = s->lp_solves;
        r["verified"] = ok;
      }
    }
    r["wall_ms"] = ms_since(t0);
    runs.push_back(r);
  }
  return {{"runs", runs}};
}

json run_sigma(const ProblemFile& p, const RunOptions& o, Verdict& v) {
  const SolverConfig cfg = o.solver();
  json runs = json::array();
  for (int N : horizons_for(p, o)) {
    const auto t0 = Clock::now();
    json r{{"N", N}};
    if (const auto alpha = alpha_for(p, N, cfg, r, v)) {
      const InvariantSetSpec spec{p.sys, p.omega, p.u_set, N, *alpha};
      const SigmaResult s = sigma_scale(spec, *p.x_set, cfg);
      bool ok = s.sigma >= 0.0 && s.sigma <= 1.0;
      for (Eigen::Index i = 0; i < s.delta.size(); ++i) {
        const double h = p.x_set->h()[i];
        ok = ok && s.sigma * s.delta[i] <= h + cfg.ineq_tol * std::max(1.0, std::abs(h));
      }
      v.check(ok);
      r["status"] = "optimal";
      r["alpha"] = *alpha;
      r["sigma"] = s.sigma;
      r["degenerate"] = s.degenerate;
      r["delta"] = std::vector<double>(s.delta.data(), s.delta.data() + s.delta.size());
      r["verified"] = ok;
    }
    r["wall_ms"] = ms_since(t0);
    runs.push_back(r);
  }
  return {{"runs", runs}};
}

json mu_json(const MuResult& m) {
  json r{{"mu", m.spec.mu}, {"lp_solves", m.lp_solves}, {"solve_ms", 1e3 * m.solve_seconds}};
  r["sigma"] = m.spec.mu > 0.0 ? json(m.spec.sigma()) : json(nullptr);
  return r;
}

json run_mu(const ProblemFile& p, const RunOptions& o, Verdict& v, bool full) {
  const SolverConfig cfg = o.solver();
  const Polyhedron& X = *p.x_set;
  json runs = json::array();
  for (int N : horizons_for(p, o)) {
    const auto t0 = Clock::now();
    json r{{"N", N}};
    const auto nstep = solve_mu_nstep(p.sys, p.omega, X, p.u_set, N, cfg);
    std::optional<MuResult> res = nstep;
    bool ok = false;
    if (full) {
      MuSearchOptions opts;
      if (nstep) opts.feasible_hint = std::max(nstep->spec.mu, 1e-9);
      res = solve_mu_full(p.sys, p.omega, X, p.u_set, N, cfg, opts);
      if (res && res->certificate) {
        ok = verify_certificate(mu_full_problem(p.sys, p.omega, X, p.u_set, N, res->spec.mu),
                                *res->certificate, cfg);
      }
      if (nstep) r["mu_nstep"] = nstep->spec.mu;
    } else if (res && res->certificate) {
      ok = verify_certificate(mu_nstep_problem(p.sys, p.omega, X, p.u_set, N), *res->certificate, cfg);
    }
    if (!res) {
      v.fail();
      r["status"] = "infeasible";
    } else {
      v.check(ok);
      r.update(mu_json(*res));
      r["status"] = "optimal";
      r["verified"] = ok;
      if (p.export_certificate && res->certificate) r["certificate"] = certificate_json(*res->certificate);
    }
    r["wall_ms"] = ms_since(t0);
    runs.push_back(r);
  }
  return {{"runs", runs}};
}

json run_membership(const ProblemFile& p, const RunOptions& o, Verdict& v) {
  const SolverConfig cfg = o.solver();
  json runs = json::array();
  for (int N : horizons_for(p, o)) {
    const auto t0 = Clock::now();
    json r{{"N", N}};
    if (const auto alpha = alpha_for(p, N, cfg, r, v)) {
      const InvariantSetSpec spec{p.sys, p.omega, p.u_set, N, *alpha};
      const ImplicitPolytope S = spec.lifted();
      std::vector<bool> inside;
      for (const Eigen::VectorXd& q : p.query_points) inside.push_back(member_implicit(S, q, cfg));
      r["status"] = "ok";
      r["alpha"] = *alpha;
      r["lifted_dim"] = S.total_dim();
      r["members"] = inside;
    }
    r["wall_ms"] = ms_since(t0);
    runs.push_back(r);
  }
  return {{"runs", runs}};
}

}  // namespace

SolverConfig RunOptions::solver() const {
  if (!(tol > 0.0)) throw InputError("--tol must be > 0");
  SolverConfig c;
  c.eq_tol = tol;
  c.ineq_tol = tol;
  return c;
}

RunResult run(const ProblemFile& problem, const RunOptions& options) {
  problem.validate();
  if (options.nmax && *options.nmax < 1) throw InputError("--nmax must be >= 1");
  const auto t0 = Clock::now();
  Verdict v;
  json body;
  RunResult out;
  try {
    switch (problem.mode) {
      case Mode::Beta:
        body = run_beta(problem, options, v);
        break;
      case Mode::NStepCheck:
        body = run_nstep_check(problem, options, v);
        break;
      case Mode::Stop1Grid:
        body = run_stop1(problem, options, v);
        break;
      case Mode::Sigma:
        body = run_sigma(problem, options, v);
        break;
      case Mode::MuNStep:
        body = run_mu(problem, options, v, false);
        break;
      case Mode::MuFull:
        body = run_mu(problem, options, v, true);
        break;
      case Mode::Membership:
        body = run_membership(problem, options, v);
        break;
    }
    body["status"] = v.status();
    out.exit_code = v.exit_code();
  } catch (const SolverError& e) {
    body["status"] = "inconclusive";
    body["message"] = e.what();
    out.exit_code = kExitInconclusive;
  }
  body["mode"] = std::string(to_string(problem.mode));
  body["problem"] = problem.name;
  body["tol"] = options.tol;
  body["wall_ms"] = ms_since(t0);
  out.json = std::move(body);
  return out;
}

json polygon_to_json(const std::string& name, const oracle2d::Polygon2D& P) {
  json verts = json::array();
  for (const oracle2d::Point& x : P.vertices()) verts.push_back({x.x(), x.y()});
  return {{"name", name}, {"vertices", verts}};
}

json export_polygons(const ProblemFile& p, const RunOptions& o) {
  p.validate();
  if (p.sys.n() != 2) throw InputError("export_polygons needs a 2-D problem");
  namespace o2 = oracle2d;
  const SolverConfig cfg = o.solver();
  const int N = horizons_for(p, o).back();
  const auto beta = solve_beta(p.sys, p.omega, p.u_set, N, cfg);
  if (!beta || !beta->alpha) throw SolverError("export_polygons: no finite alpha at N = " + std::to_string(N));
  const double alpha = *beta->alpha;

  json polys = json::array();
  const o2::Polygon2D omega = o2::Polygon2D::from_hrep(p.omega);
  const o2::Polygon2D omega_inf = o2::explicit_omega_inf(p.sys, p.omega, p.u_set, N, alpha);
  polys.push_back(polygon_to_json("Omega", omega));
  polys.push_back(polygon_to_json("Omega_alpha", omega.scaled(alpha)));
  polys.push_back(polygon_to_json("Omega_N_alpha", o2::explicit_omega_k(p.sys, p.omega, p.u_set, N, alpha)));
  polys.push_back(polygon_to_json("Omega_inf_alpha", omega_inf));
  const auto sigma = o2::outer_approx_sequence(
      p.sys, p.u_set, o2::Polygon2D::box(-kSigma0Radius, kSigma0Radius, -kSigma0Radius, kSigma0Radius),
      kSigmaSteps);
  for (size_t k = 0; k < sigma.sets.size(); ++k) {
    polys.push_back(polygon_to_json("Sigma_" + std::to_string(k), sigma.sets[k]));
  }
  json out{{"problem", p.name}, {"N", N}, {"alpha", alpha}, {"sigma_truncated", sigma.truncated}};
  if (p.x_set) {
    polys.push_back(polygon_to_json("X", o2::Polygon2D::from_hrep(*p.x_set)));
    const SigmaResult s = sigma_scale({p.sys, p.omega, p.u_set, N, alpha}, *p.x_set, cfg);
    polys.push_back(polygon_to_json("sigma_Omega_inf_alpha", omega_inf.scaled(s.sigma)));
    out["sigma"] = s.sigma;
    const auto mu = solve_mu_nstep(p.sys, p.omega, *p.x_set, p.u_set, N, cfg);
    if (mu && mu->spec.mu > 0.0) {
      polys.push_back(polygon_to_json(
          "mu_set", o2::explicit_constrained_omega_inf(p.sys, p.omega, *p.x_set, p.u_set, N,
                                                       mu->spec.sigma())));
      out["mu"] = mu->spec.mu;
    }
  }
  out["polygons"] = polys;
  return out;
}

std::vector<Eigen::VectorXd> random_directions(int n, int count, std::uint64_t seed) {
  if (n < 1 || count < 0) throw InputError("random_directions: bad dimension or count");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Eigen::VectorXd> dirs;
  while (static_cast<int>(dirs.size()) < count) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = gauss(rng);
    const double norm = v.norm();
    if (norm > 0.0) dirs.push_back(v / norm);
  }
  return dirs;
}

namespace {

struct Block {
  LinearSystem sys;
  Polyhedron u_set;
};

// Splits (A, B, U) into decoupled 2-state blocks or throws InputError.
std::vector<Block> planar_blocks(const ProblemFile& p) {
  const int n = p.sys.n();
  const int m = p.sys.m();
  if (n % 2 != 0) throw InputError("compare-rays needs an even state dimension");
  const int nb = n / 2;
  const Eigen::MatrixXd& A = p.sys.A;
  const Eigen::MatrixXd& B = p.sys.B;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i / 2 != j / 2 && A(i, j) != 0.0) throw InputError("compare-rays needs block-diagonal 2x2 A");
    }
  }
  std::vector<int> owner(static_cast<size_t>(m), -1);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) {
      if (B(i, j) == 0.0) continue;
      if (owner[j] >= 0 && owner[j] != i / 2) throw InputError("compare-rays: an input drives two blocks");
      owner[j] = i / 2;
    }
  }
  std::vector<std::vector<int>> cols(static_cast<size_t>(nb));
  for (int j = 0; j < m; ++j) {
    if (owner[j] >= 0) cols[owner[j]].push_back(j);
  }
  std::vector<std::vector<int>> urows(static_cast<size_t>(nb));
  const Polyhedron& U = p.u_set;
  for (int r = 0; r < U.rows(); ++r) {
    int blk = -1;
    for (int j = 0; j < m; ++j) {
      if (U.H()(r, j) == 0.0) continue;
      if (owner[j] < 0) continue;
      if (blk >= 0 && blk != owner[j]) throw InputError("compare-rays: U couples two blocks");
      blk = owner[j];
    }
    if (blk >= 0) urows[blk].push_back(r);
  }
  std::vector<Block> out;
  for (int b = 0; b < nb; ++b) {
    const auto& c = cols[b];
    if (c.size() > 2) throw InputError("compare-rays: a block has more than two inputs");
    const auto mc = static_cast<Eigen::Index>(c.size());
    Eigen::MatrixXd Bi(2, mc);
    Eigen::MatrixXd Hi(static_cast<Eigen::Index>(urows[b].size()), mc);
    Eigen::VectorXd hi(static_cast<Eigen::Index>(urows[b].size()));
    for (Eigen::Index k = 0; k < mc; ++k) Bi.col(k) = B.block(2 * b, c[k], 2, 1);
    for (size_t r = 0; r < urows[b].size(); ++r) {
      for (Eigen::Index k = 0; k < mc; ++k) Hi(static_cast<Eigen::Index>(r), k) = U.H()(urows[b][r], c[k]);
      hi[static_cast<Eigen::Index>(r)] = U.h()[urows[b][r]];
    }
    out.push_back({{A.block(2 * b, 2 * b, 2, 2), Bi}, Polyhedron(Hi, hi)});
  }
  return out;
}

}  // namespace

std::vector<RayRow> compare_rays(const ProblemFile& p, const RayOptions& o, const SolverConfig& cfg) {
  p.validate();
  if (o.directions < 1) throw InputError("--directions must be >= 1");
  const std::vector<Block> blocks = planar_blocks(p);
  std::vector<oracle2d::Polygon2D> sigma;
  const auto sigma0 =
      oracle2d::Polygon2D::box(-kSigma0Radius, kSigma0Radius, -kSigma0Radius, kSigma0Radius);
  for (const Block& b : blocks) {
    sigma.push_back(oracle2d::outer_approx_sequence(b.sys, b.u_set, sigma0, kSigmaSteps).sets.back());
  }
  auto in_sigma = [&](const Eigen::VectorXd& x) {
    for (size_t b = 0; b < sigma.size(); ++b) {
      if (!sigma[b].contains(x.segment<2>(static_cast<Eigen::Index>(2 * b)), oracle2d::kVertexTol)) {
        return false;
      }
    }
    return true;
  };

  const int N = o.horizon.value_or(p.horizons.back());
  const auto beta = solve_beta(p.sys, p.omega, p.u_set, N, cfg);
  if (!beta || !beta->alpha) throw SolverError("compare_rays: no finite alpha at N = " + std::to_string(N));
  const ImplicitPolytope omega_inf = InvariantSetSpec{p.sys, p.omega, p.u_set, N, *beta->alpha}.lifted();

  const int n = p.sys.n();
  // Any unit ray leaves Σ_0 before r = radius·sqrt(n).
  const double r_hi = (kSigma0Radius + 1.0) * std::sqrt(static_cast<double>(n));
  std::vector<RayRow> rows;
  const auto dirs = random_directions(n, o.directions, o.seed);
  for (int i = 0; i < o.directions; ++i) {
    RayRow row;
    row.index = i;
    row.r_omega = ray_extent(omega_inf, dirs[i], cfg);
    row.r_sigma = ray_boundary(in_sigma, dirs[i], r_hi, o.bisection_iterations);
    row.ratio = row.r_omega / row.r_sigma;
    rows.push_back(row);
  }
  return rows;
}

std::string rays_csv(const std::vector<RayRow>& rows) {
  std::ostringstream os;
  os << "direction,r_omega,r_sigma,ratio\n";
  char buf[128];
  for (const RayRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", r.index, r.r_omega, r.r_sigma, r.ratio);
    os << buf;
  }
  return os.str();
}

}  // namespace invset::cli
