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

// Acceptance driver: one PASS/FAIL line per criterion, exit 0 iff all pass.
// Tolerances and sizes are pinned here and nowhere else.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "invset/cli/examples.hpp"
#include "invset/cli/run.hpp"
#include "invset/inclusion.hpp"
#include "invset/invariant_set.hpp"
#include "invset/nstep.hpp"
#include "invset/oracle2d.hpp"
#include "invset/state_constraints.hpp"
#include "support.hpp"

namespace {

using namespace invset;
using oracle2d::Point;
using oracle2d::Polygon2D;

constexpr double kBand = 1e-6;          // 1: vertex-margin band excluded from comparison
constexpr int kFarkasPairs = 200;       // 1
constexpr int kSumInstances = 100;      // 2
constexpr double kVertexTol = 1e-7;     // 2, 3: oracle containment tolerance
constexpr double kSupportSlack = -1e-6; // 3, 6: minimum support-function slack
constexpr int kDirections = 64;         // 3, 6
constexpr int kGrid = 50;               // 4
constexpr double kGridHalfWidth = 6.0;  // 4
constexpr double kGridBand = 1e-5;      // 4
constexpr double kEx2Clip = 10.0;       // 5: extra vertex set Ω∞^α ∩ 10·𝓑²
constexpr std::uint64_t kEx4Seed = 1;   // 7, 8
constexpr std::uint64_t kRaySeed = 7;   // 8
constexpr int kRays = 100;              // 8
constexpr double kRatioTol = 1e-6;      // 8
constexpr double kMuRelTol = 1e-4;      // 9
constexpr double kHugeBox = 1e6;        // 9

int g_failures = 0;

struct Verdict {
  bool pass = true;
  std::string detail;
};

void report(int id, const char* name, double budget_s, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0.0 && secs > budget_s) {
    v.pass = false;
    v.detail += " (over budget)";
  }
  if (!v.pass) ++g_failures;
  std::printf("%s %d %s: %s [%.2f s]\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double vertex_margin(const Polygon2D& inner, const Polyhedron& outer) {
  double worst = -kInf;
  for (const Point& v : inner.vertices()) {
    for (int i = 0; i < outer.rows(); ++i) {
      const Eigen::Vector2d a = outer.H().row(i).transpose();
      worst = std::max(worst, (a.dot(v) - outer.h()[i]) / a.norm());
    }
  }
  return worst;
}

double min_slack(const std::function<double(const Point&)>& inner,
                 const std::function<double(const Point&)>& outer) {
  double worst = kInf;
  for (const Point& d : oracle2d::unit_directions(kDirections)) worst = std::min(worst, outer(d) - inner(d));
  return worst;
}

Verdict farkas_exactness() {
  std::mt19937_64 rng(2024);
  int agree = 0, compared = 0, excluded = 0;
  for (int i = 0; i < kFarkasPairs; ++i) {
    const Polyhedron G = testing::random_polygon(rng, 3 + i % 6, 0.3, 1.5);
    const Polyhedron D = testing::random_polygon(rng, 3 + (i / 6) % 6, 0.6, 2.0);
    const double margin = vertex_margin(Polygon2D::from_hrep(G), D);
    if (std::abs(margin) < kBand) {
      ++excluded;
      continue;
    }
    ++compared;
    const auto cert = farkas_inclusion(G, D);
    if (cert.has_value() == (margin < 0.0) && (!cert || verify_farkas(G, D, *cert))) ++agree;
  }
  return {agree == compared, fmt("%d/%d agree, %d in band", agree, compared, excluded)};
}

Verdict sum_soundness() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::uniform_real_distribution<double> shrink(0.2, 1.2);
  int certified = 0, confirmed = 0, refuted = 0;
  for (int i = 0; i < kSumInstances; ++i) {
    std::vector<SumTerm> terms;
    Polygon2D explicit_sum = Polygon2D::hull({Point::Zero()});
    for (int t = 0; t < 2 + i % 2; ++t) {
      const int m = 1 + (i + t) % 2;
      Eigen::MatrixXd P(2, m);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < m; ++c) P(r, c) = entry(rng);
      const Polyhedron set = m == 1 ? testing::interval(-0.5 - 0.5 * shrink(rng), 0.5 + 0.5 * shrink(rng))
                                    : testing::random_polygon(rng, 3 + i % 4, 0.4, 1.2);
      explicit_sum = minkowski_sum_2d(explicit_sum, oracle2d::linear_image(P, set));
      terms.push_back({P, set});
    }
    const Polyhedron omega = scale(testing::random_polygon(rng, 3 + i % 5, 0.5, 1.0), shrink(rng));
    const auto cert = check_sum_inclusion(omega, terms);
    const bool inside = oracle2d::contains_by_vertices(Polygon2D::from_hrep(omega), explicit_sum, kVertexTol);
    if (cert) {
      ++certified;
      inside && verify_certificate(sum_inclusion_problem(omega, terms), *cert) ? ++confirmed : ++refuted;
    }
  }
  return {refuted == 0 && certified > 0,
          fmt("%d certificates, %d confirmed, %d false positives", certified, confirmed, refuted)};
}

Verdict example1_chain() {
  const LinearSystem sys = testing::ex1_system();
  const Polyhedron omega = testing::ex_omega();
  const Polyhedron U = testing::ex_u();
  const auto sigma = oracle2d::outer_approx_sequence(
      sys, U, Polygon2D::box(-cli::kSigma0Radius, cli::kSigma0Radius, -cli::kSigma0Radius, cli::kSigma0Radius),
      cli::kSigmaSteps);
  const Polygon2D& sigma60 = sigma.sets.back();
  Verdict v;
  double prev = kInf;
  double worst = kInf;
  for (int N : {5, 10, 15, 20}) {
    const auto r = solve_beta(sys, omega, U, N);
    if (!r || !r->alpha || !std::isfinite(r->beta)) return {false, fmt("no finite beta at N=%d", N)};
    if (r->beta > prev + 1e-9) v.pass = false;
    prev = r->beta;
    const double a = *r->alpha;
    const Polygon2D seed = Polygon2D::from_hrep(omega).scaled(a);
    const Polygon2D omega_n = oracle2d::explicit_omega_k(sys, omega, U, N, a);
    const Polygon2D omega_inf = oracle2d::explicit_omega_inf(sys, omega, U, N, a);
    const double s1 = testing::support_slack(seed, omega_n);
    const double s2 = testing::support_slack(omega_n, omega_inf);
    const double s3 = testing::support_slack(omega_inf, sigma60);
    worst = std::min({worst, s1, s2, s3});
    if (!oracle2d::contains_by_vertices(seed, omega_n, kVertexTol)) v.pass = false;
    v.detail += fmt("N=%d beta=%.6f; ", N, r->beta);
  }
  if (worst < kSupportSlack || sigma.truncated) v.pass = false;
  v.detail += fmt("min slack %.3g", worst);
  return v;
}

Verdict singular_grid() {
  const cli::ProblemFile p = cli::example2();
  const int N = 10;
  const auto beta = solve_beta(p.sys, p.omega, p.u_set, N);
  if (!beta || !beta->alpha) return {false, "no finite beta"};
  const InvariantSetSpec spec{p.sys, p.omega, p.u_set, N, *beta->alpha};
  const ImplicitPolytope S = spec.lifted();
  const Polygon2D P = oracle2d::explicit_omega_inf(p.sys, p.omega, p.u_set, N, spec.alpha);
  int agree = 0, compared = 0, excluded = 0;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      const Point x(-kGridHalfWidth + 2 * kGridHalfWidth * i / (kGrid - 1),
                    -kGridHalfWidth + 2 * kGridHalfWidth * j / (kGrid - 1));
      const double sd = P.signed_distance(x);
      if (std::abs(sd) < kGridBand) {
        ++excluded;
        continue;
      }
      ++compared;
      if (member_implicit(S, x) == (sd < 0.0)) ++agree;
    }
  }
  return {agree == compared, fmt("%d/%d agree, %d in band", agree, compared, excluded)};
}

std::vector<Eigen::VectorXd> boundary_points(const Polygon2D& P) {
  std::vector<Eigen::VectorXd> pts;
  for (size_t i = 0; i < P.size(); ++i) {
    pts.emplace_back(P.vertices()[i]);
    pts.emplace_back(0.5 * (P.vertices()[i] + P.vertices()[(i + 1) % P.size()]));
  }
  return pts;
}

Verdict control_invariance() {
  Verdict v;
  for (const auto& [p, N] : {std::pair{cli::example1(), 5}, std::pair{cli::example2(), 10}}) {
    const auto beta = solve_beta(p.sys, p.omega, p.u_set, N);
    if (!beta || !beta->alpha) return {false, "no finite beta for " + p.name};
    const InvariantSetSpec spec{p.sys, p.omega, p.u_set, N, *beta->alpha};
    const Polygon2D P = oracle2d::explicit_omega_inf(p.sys, p.omega, p.u_set, N, spec.alpha);
    std::vector<Eigen::VectorXd> pts = boundary_points(P);
    if (p.name == "ex2") {
      for (auto& x : boundary_points(P.intersect(scale(unit_box(2), kEx2Clip)))) pts.push_back(x);
    }
    const InvarianceReport rep = verify_control_invariance(spec, pts);
    if (!rep.ok()) v.pass = false;
    v.detail += fmt("%s: %zu failures / %d points; ", p.name.c_str(), rep.failures.size(), rep.checked);
  }
  return v;
}

Verdict state_constraints() {
  const cli::ProblemFile p = cli::example3();
  const int N = 15;
  const auto beta = solve_beta(p.sys, p.omega, p.u_set, N);
  if (!beta || !beta->alpha) return {false, "no finite beta"};
  const InvariantSetSpec spec{p.sys, p.omega, p.u_set, N, *beta->alpha};
  const double sigma = sigma_scale(spec, *p.x_set).sigma;
  const auto mu = solve_mu_nstep(p.sys, p.omega, *p.x_set, p.u_set, N);
  if (!mu) return {false, "mu_nstep infeasible"};
  const ImplicitPolytope inv = spec.lifted();
  const ImplicitPolytope mus = mu_set(mu->spec);
  const Polygon2D X = Polygon2D::from_hrep(*p.x_set);
  const auto h_inner = [&](const Point& d) { return sigma * support_implicit(inv, d); };
  const auto h_mu = [&](const Point& d) { return support_implicit(mus, d); };
  const auto h_x = [&](const Point& d) { return X.support(d); };
  const double s1 = min_slack(h_inner, h_mu);
  const double s2 = min_slack(h_mu, h_x);
  const bool ok = sigma > 0.0 && sigma <= 1.0 && s1 >= kSupportSlack && s2 >= kSupportSlack;
  return {ok, fmt("sigma=%.6f mu=%.6f slack(sigma*Omega_inf, mu-set)=%.3g slack(mu-set, X)=%.3g", sigma,
                  mu->spec.mu, s1, s2)};
}

Verdict scalability() {
  const cli::ProblemFile p = cli::example4(kEx4Seed);
  const int nh = p.omega.rows(), ng = p.u_set.rows(), n = p.sys.n(), m = p.sys.m();
  Verdict v;
  for (int N : {3, 5, 9, 15}) {
    const auto r = solve_beta(p.sys, p.omega, p.u_set, N);
    const int rows = nh + N * ng, cols = nh + 2 * N * m;
    const bool dims_ok = r && r->dims.n_g_bar == rows && r->dims.n_h_bar == cols && r->dims == nstep_dims(n, m, nh, ng, N);
    if (!r || !dims_ok || r->solve_seconds > 60.0) v.pass = false;
    v.detail += r ? fmt("N=%d T %dx%d beta=%.5f %.2fs; ", N, r->dims.n_g_bar, r->dims.n_h_bar, r->beta, r->solve_seconds)
                  : fmt("N=%d infeasible; ", N);
  }
  return v;
}

Verdict ray_ratios() {
  const cli::ProblemFile p = cli::example4(kEx4Seed);
  Verdict v;
  double prev_mean = -kInf;
  for (int N : {3, 5, 9, 15}) {
    cli::RayOptions opt;
    opt.directions = kRays;
    opt.seed = kRaySeed;
    opt.horizon = N;
    const auto rows = cli::compare_rays(p, opt);
    double mean = 0.0, lo = kInf, hi = -kInf;
    for (const auto& r : rows) {
      mean += r.ratio / rows.size();
      lo = std::min(lo, r.ratio);
      hi = std::max(hi, r.ratio);
    }
    if (static_cast<int>(rows.size()) != kRays || lo <= 0.0 || hi > 1.0 + kRatioTol || mean < prev_mean) v.pass = false;
    prev_mean = mean;
    v.detail += fmt("N=%d mean=%.4f range=[%.4f, %.4f]; ", N, mean, lo, hi);
  }
  return v;
}

Verdict cross_consistency() {
  const LinearSystem sys = testing::ex1_system();
  const auto beta = solve_beta(sys, testing::ex_omega(), testing::ex_u(), 5);
  const auto mu = solve_mu_nstep(sys, testing::ex_omega(), scale(unit_box(2), kHugeBox), testing::ex_u(), 5);
  if (!beta || !mu) return {false, "LP infeasible"};
  const double rel = std::abs(mu->spec.mu - beta->beta) / beta->beta;
  return {rel <= kMuRelTol, fmt("mu=%.9f beta=%.9f rel=%.2g", mu->spec.mu, beta->beta, rel)};
}

}  // namespace

int main() {
  report(1, "farkas_exactness", 10.0, farkas_exactness);
  report(2, "sum_inclusion_soundness", 30.0, sum_soundness);
  report(3, "example1_inclusion_chain", 60.0, example1_chain);
  report(4, "singular_a_membership_grid", 60.0, singular_grid);
  report(5, "control_invariance", 0.0, control_invariance);
  report(6, "state_constraint_chain", 120.0, state_constraints);
  report(7, "example4_scalability", 0.0, scalability);
  report(8, "ray_ratio_trend", 0.0, ray_ratios);
  report(9, "mu_beta_cross_consistency", 0.0, cross_consistency);
  std::printf("%d/9 criteria passed\n", 9 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
