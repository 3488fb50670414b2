// Copyright 2026 The anisoap Authors
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

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "anisoap/errors.hpp"
#include "anisoap/schemes.hpp"

using namespace anisoap;

namespace {

TestCase aligned(double eps) { return case_constant_b(EpsilonField::constant(eps)); }

ErrorReport errors(const Grid& g, const SolveResult& r, const TestCase& tc) {
  return errors_against_exact(g, r, tc, error_quad_rule(4));
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("scheme names") {
  for (SchemeKind k : {SchemeKind::P, SchemeKind::MM, SchemeKind::MM_VAR_EPS, SchemeKind::DB,
                       SchemeKind::LIMIT}) {
    CHECK(parse_scheme(scheme_name(k)) == k);
  }
  CHECK(parse_scheme("MM") == SchemeKind::MM);
  CHECK_THROWS_AS(parse_scheme("xyz"), ConfigError);
}

TEST_CASE("coarsest refinement level at eps = 1") {
  const Grid g(10, 10);
  const TestCase tc = aligned(1.0);
  const SolveResult mm = solve_MM(g, tc);
  const ErrorReport e = errors(g, mm, tc);
  CHECK(rel(e.l2_abs_u, 5.7e-3) < 0.15);
  CHECK(rel(e.h1_abs_u, 1.86e-1) < 0.15);
  CHECK(std::isfinite(e.l2_abs_q));

  const SolveResult p = solve_P(g, tc);
  CHECK(rel(errors(g, p, tc).l2_abs_u, 5.7e-3) < 0.15);
  CHECK(rel(errors(g, p, tc).l2_abs_u, e.l2_abs_u) < 0.05);
}

TEST_CASE("boundary values and system shapes") {
  const Grid g(20, 20);
  const TestCase tc = aligned(1e-3);
  const SolveResult mm = solve_MM(g, tc, {.estimate_condition = false, .keep_system = true});
  CHECK(mm.rows == 399 + 380);
  REQUIRE(mm.system);
  double big = 0.0;
  for (double v : mm.system->values) big = std::max(big, std::abs(v));
  CHECK(mm.system->max_abs_asymmetry() <= 1e-14 * big);
  CHECK(mm.residual < 1e-10);
  for (int i = 0; i <= 20; ++i) {
    CHECK(mm.u_h[g.node(i, 0)] == 0.0);
    CHECK(mm.u_h[g.node(i, 20)] == 0.0);
    CHECK(mm.q_h[g.node(0, i)] == 0.0);
  }

  const SolveResult db = solve_DB(g, tc);
  CHECK(db.rows == 3 * 399 + 2 * 380);
  for (std::size_t n = 0; n < db.u_h.size(); ++n) {
    CHECK(db.u_h[n] == db.p_h[n] + db.q_h[n]);
  }
  CHECK(db.lambda_h.size() == db.u_h.size());
  CHECK(db.mu_h.size() == db.u_h.size());
  CHECK(std::isnan(errors(g, db, tc).l2_abs_q));
}

TEST_CASE("the three schemes agree at moderate eps") {
  const Grid g(20, 20);
  for (double eps : {10.0, 1.0, 0.1}) {
    const TestCase tc = aligned(eps);
    const double mm = errors(g, solve_MM(g, tc), tc).l2_abs_u;
    CHECK(rel(errors(g, solve_P(g, tc), tc).l2_abs_u, mm) <= 0.05);
    CHECK(rel(errors(g, solve_DB(g, tc), tc).l2_abs_u, mm) <= 0.05);
  }
  for (double eps : {1e-4, 1e-10}) {
    const TestCase tc = aligned(eps);
    const double mm = errors(g, solve_MM(g, tc), tc).l2_abs_u;
    CHECK(rel(errors(g, solve_DB(g, tc), tc).l2_abs_u, mm) <= 0.05);
  }
}

TEST_CASE("limit model has zero parallel gradient") {
  const Grid g(20, 20);
  const TestCase tc = aligned(0.0);
  const SolveResult lim = solve_scheme(SchemeKind::LIMIT, g, tc);
  CHECK(parallel_gradient_norm(g, tc.spec(), lim.u_h, gauss_rule()) <= 1e-8);
  // u_h stays O(1) and close to the limit solution
  CHECK(errors(g, lim, tc).l2_abs_u < 1e-3);

  const auto p = reconstruct_micro(g, lim, tc.eps());
  CHECK(p == lim.u_h);
}

TEST_CASE("macro part reconstruction") {
  const Grid g(20, 20);
  const TestCase one = aligned(1.0);
  const SolveResult r = solve_MM(g, one);
  const auto p = reconstruct_micro(g, r, one.eps());
  CHECK(parallel_gradient_norm(g, one.spec(), p, gauss_rule()) <= 1e-6);

  const TestCase small = aligned(1e-10);
  const SolveResult s = solve_MM(g, small);
  const auto ps = reconstruct_micro(g, s, small.eps());
  double worst = 0.0;
  for (std::size_t n = 0; n < ps.size(); ++n) worst = std::max(worst, std::abs(ps[n] - s.u_h[n]));
  CHECK(worst <= 1e-9);

  const SolveResult pr = solve_P(g, one);
  CHECK_THROWS_AS(reconstruct_micro(g, pr, one.eps()), std::logic_error);
}

TEST_CASE("micro bound and parallel gradient decay") {
  const Grid g(100, 100);
  std::vector<double> grad_q;
  for (double eps : {1.0, 1e-4, 1e-8, 1e-12, 1e-15}) {
    const TestCase tc = aligned(eps);
    const SolveResult r = solve_MM(g, tc);
    grad_q.push_back(parallel_gradient_norm(g, tc.spec(), r.q_h, gauss_rule()));
  }
  const auto [lo, hi] = std::minmax_element(grad_q.begin(), grad_q.end());
  CHECK(*hi / *lo < 3.0);

  std::vector<double> le, lg;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    const TestCase tc = aligned(eps);
    const SolveResult r = solve_MM(g, tc);
    le.push_back(std::log(eps));
    lg.push_back(std::log(parallel_gradient_norm(g, tc.spec(), r.u_h, gauss_rule())));
  }
  const double s1 = (lg[1] - lg[0]) / (le[1] - le[0]);
  const double s2 = (lg[2] - lg[1]) / (le[2] - le[1]);
  CHECK(std::abs(s1 - 1.0) <= 0.1);
  CHECK(std::abs(s2 - 1.0) <= 0.1);
}

TEST_CASE("interpolation error converges at third order") {
  const TestCase tc = case_variable_b(2.0, 1, EpsilonField::constant(0.5));
  std::vector<double> l2;
  for (int n : {8, 16, 32}) {
    const Grid g(n, n);
    SolveResult r;
    r.scheme = SchemeKind::P;
    r.u_h.resize(g.num_nodes());
    for (int k = 0; k < g.num_nodes(); ++k) {
      r.u_h[k] = tc.u_exact(g.x(g.node_i(k)), g.y(g.node_j(k))).value;
    }
    l2.push_back(errors(g, r, tc).l2_abs_u);
  }
  CHECK(l2[0] / l2[1] == doctest::Approx(8.0).epsilon(0.15));
  CHECK(l2[1] / l2[2] == doctest::Approx(8.0).epsilon(0.15));

  SolveResult wrong;
  wrong.u_h.resize(10);
  CHECK_THROWS_AS(errors(Grid(4, 4), wrong, tc), std::logic_error);
}

TEST_CASE("configuration errors") {
  const Grid g(4, 4);
  CHECK_THROWS_AS(solve_P(g, aligned(0.0)), ConfigError);
  const TestCase var = case_constant_b(EpsilonField::tanh_profile(1e-3, 50.0, 0.25));
  CHECK_THROWS_AS(solve_DB(g, var), ConfigError);
  const SolveResult r = solve_MM(g, var);
  CHECK(r.scheme == SchemeKind::MM_VAR_EPS);
  CHECK(std::isnan(errors(g, r, var).l2_abs_q));
}

TEST_CASE("condition estimate is attached on request") {
  const Grid g(10, 10);
  const SolveResult r = solve_MM(g, aligned(1.0), {.estimate_condition = true});
  REQUIRE(r.condition.has_value());
  CHECK(*r.condition > 1.0);
  CHECK_FALSE(solve_MM(g, aligned(1.0)).condition.has_value());
}
