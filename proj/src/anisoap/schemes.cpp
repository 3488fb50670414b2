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

#include "anisoap/schemes.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cmath>
#include <optional>
#include <span>

#include "anisoap/errors.hpp"
#include "anisoap/linalg.hpp"

namespace anisoap {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kFallbackResidual = 1e-8;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<double> slice(const std::vector<double>& x, int offset, int count) {
  return {x.begin() + offset, x.begin() + offset + count};
}

}  // namespace

std::string_view scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::P: return "P";
    case SchemeKind::MM: return "MM";
    case SchemeKind::MM_VAR_EPS: return "MM_VAR_EPS";
    case SchemeKind::DB: return "DB";
    case SchemeKind::LIMIT: return "LIMIT";
  }
  return "?";
}

SchemeKind parse_scheme(std::string_view name) {
  const std::string s = lower(name);
  if (s == "p") return SchemeKind::P;
  if (s == "mm") return SchemeKind::MM;
  if (s == "mm_var_eps") return SchemeKind::MM_VAR_EPS;
  if (s == "db") return SchemeKind::DB;
  if (s == "limit") return SchemeKind::LIMIT;
  throw ConfigError("unknown scheme '" + std::string(name) +
                    "' (expected p, mm, mm_var_eps, db or limit)");
}

SchemeSystem assemble_scheme(SchemeKind scheme, const Grid& grid,
                             const TestCase& tc, const QuadRule& rule) {
  const AnisotropySpec& spec = tc.spec();
  const EpsilonField& eps = spec.eps;
  if (scheme == SchemeKind::P && eps.is_constant() && eps.constant_value() <= 0.0) {
    throw ConfigError("scheme P needs eps > 0");
  }
  if (scheme == SchemeKind::DB && !eps.is_constant()) {
    throw ConfigError("scheme DB supports constant eps only");
  }

  const BoundaryClass bc = classify_boundary(
      grid, [&spec](double x, double y) { return spec.b(x, y); });
  SchemeSystem sys{scheme, build_dofmap(grid, bc, Space::V),
                   build_dofmap(grid, bc, Space::L), {}, nullptr, {}};
  const DofMap& V = sys.v_map;
  const DofMap& L = sys.l_map;
  const int nv = V.free_count();
  const int nl = L.free_count();
  const ScalarFn f = [&tc](double x, double y) { return tc.forcing(x, y); };
  const std::vector<double> fv = assemble_load(grid, f, rule, V);

  switch (scheme) {
    case SchemeKind::P: {
      const SparseMatrix par =
          assemble_form(grid, spec, rule, V, V, FormKind::ParInvEpsWeighted);
      const SparseMatrix perp = assemble_form(grid, spec, rule, V, V, FormKind::Perp);
      auto m = std::make_shared<SparseMatrix>(add(par, 1.0, perp, 1.0));
      m->symmetric = true;
      sys.matrix = std::move(m);
      sys.block_sizes = {nv};
      sys.rhs = fv;
      break;
    }
    case SchemeKind::MM:
    case SchemeKind::MM_VAR_EPS:
    case SchemeKind::LIMIT: {
      const SparseMatrix perp = assemble_form(grid, spec, rule, V, V, FormKind::Perp);
      const SparseMatrix par_vl = assemble_form(grid, spec, rule, V, L, FormKind::Par);
      const SparseMatrix par_lv = assemble_form(grid, spec, rule, L, V, FormKind::Par);
      std::vector<Block> blocks{{0, 0, &perp}, {0, 1, &par_vl}, {1, 0, &par_lv}};
      SparseMatrix par_eps;
      if (scheme != SchemeKind::LIMIT) {
        par_eps = assemble_form(grid, spec, rule, L, L, FormKind::ParEpsWeighted);
        blocks.push_back({1, 1, &par_eps, -1.0});
      }
      const std::array<int, 2> sizes{nv, nl};
      auto m = std::make_shared<SparseMatrix>(assemble_blocks(sizes, sizes, blocks));
      m->symmetric = true;
      sys.matrix = std::move(m);
      sys.block_sizes = {nv, nl};
      sys.rhs = fv;
      sys.rhs.resize(nv + nl, 0.0);
      break;
    }
    case SchemeKind::DB: {
      const double e = eps.constant_value();
      const SparseMatrix perp = assemble_form(grid, spec, rule, V, V, FormKind::Perp);
      const SparseMatrix par_vv = assemble_form(grid, spec, rule, V, V, FormKind::Par);
      const SparseMatrix par_vl = assemble_form(grid, spec, rule, V, L, FormKind::Par);
      const SparseMatrix par_lv = assemble_form(grid, spec, rule, L, V, FormKind::Par);
      const SparseMatrix mass = assemble_form(grid, spec, rule, V, V, FormKind::Mass);
      // Unknown order (p, lambda, q, l, mu).
      const std::vector<Block> blocks{
          {0, 0, &perp},       {0, 2, &perp},         {0, 1, &par_vl},
          {1, 0, &par_lv},
          {2, 0, &perp, e},    {2, 2, &par_vv},       {2, 2, &perp, e},
          {2, 3, &mass},
          {3, 2, &mass},       {3, 4, &par_vl},
          {4, 3, &par_lv},
      };
      const std::array<int, 5> sizes{nv, nl, nv, nv, nl};
      sys.matrix = std::make_shared<SparseMatrix>(assemble_blocks(sizes, sizes, blocks));
      sys.block_sizes = {nv, nl, nv, nv, nl};
      sys.rhs.assign(3 * nv + 2 * nl, 0.0);
      for (int i = 0; i < nv; ++i) {
        sys.rhs[i] = fv[i];
        sys.rhs[nv + nl + i] = e * fv[i];
      }
      break;
    }
  }
  return sys;
}

SolveResult solve_scheme(SchemeKind scheme, const Grid& grid, const TestCase& tc,
                         const SolveOptions& opts) {
  if (scheme == SchemeKind::MM && !tc.eps().is_constant()) scheme = SchemeKind::MM_VAR_EPS;
  SolveResult res;
  res.scheme = scheme;

  auto t0 = Clock::now();
  SchemeSystem sys = assemble_scheme(scheme, grid, tc, gauss_rule());
  res.assembly_ms = ms_since(t0);
  res.rows = sys.matrix->rows;
  res.nnz = sys.matrix->nnz();

  std::optional<Factorization> F = Factorization::factorize(sys.matrix);
  res.factor_ms = F->stats().factor_ms;
  t0 = Clock::now();
  std::vector<double> x = F->solve(sys.rhs);
  res.solve_ms = ms_since(t0);
  res.residual = relative_residual(*sys.matrix, x, sys.rhs);

  // Diagonal-preferring pivots can accept tiny eps-scaled entries of the
  // saddle blocks; retry with plain partial pivoting.
  if (!(res.residual <= kFallbackResidual)) {
    F.reset();
    F = Factorization::factorize(sys.matrix, PivotStrategy::Unsymmetric);
    res.factor_ms += F->stats().factor_ms;
    t0 = Clock::now();
    std::vector<double> x2 = F->solve(sys.rhs);
    res.solve_ms += ms_since(t0);
    const double r2 = relative_residual(*sys.matrix, x2, sys.rhs);
    res.pivot_fallback = true;
    if (r2 < res.residual || !std::isfinite(res.residual)) {
      x = std::move(x2);
      res.residual = r2;
    }
  }
  if (!std::isfinite(res.residual)) {
    throw SolverFailure("solve produced non-finite values");
  }
  if (opts.estimate_condition) res.condition = condition_estimate(*sys.matrix, *F);

  const DofMap& V = sys.v_map;
  const DofMap& L = sys.l_map;
  const int nv = V.free_count();
  const int nl = L.free_count();
  switch (scheme) {
    case SchemeKind::P:
      res.u_h = expand_to_nodes(V, x);
      break;
    case SchemeKind::MM:
    case SchemeKind::MM_VAR_EPS:
    case SchemeKind::LIMIT:
      res.u_h = expand_to_nodes(V, slice(x, 0, nv));
      res.q_h = expand_to_nodes(L, slice(x, nv, nl));
      break;
    case SchemeKind::DB: {
      res.p_h = expand_to_nodes(V, slice(x, 0, nv));
      res.lambda_h = expand_to_nodes(L, slice(x, nv, nl));
      res.q_h = expand_to_nodes(V, slice(x, nv + nl, nv));
      res.l_h = expand_to_nodes(V, slice(x, 2 * nv + nl, nv));
      res.mu_h = expand_to_nodes(L, slice(x, 3 * nv + nl, nl));
      res.u_h.resize(res.p_h.size());
      for (std::size_t i = 0; i < res.u_h.size(); ++i) res.u_h[i] = res.p_h[i] + res.q_h[i];
      break;
    }
  }
  if (opts.keep_system) {
    res.system = sys.matrix;
    res.rhs = std::move(sys.rhs);
  }
  return res;
}

SolveResult solve_P(const Grid& grid, const TestCase& tc, const SolveOptions& opts) {
  return solve_scheme(SchemeKind::P, grid, tc, opts);
}

SolveResult solve_MM(const Grid& grid, const TestCase& tc, const SolveOptions& opts) {
  return solve_scheme(SchemeKind::MM, grid, tc, opts);
}

SolveResult solve_DB(const Grid& grid, const TestCase& tc, const SolveOptions& opts) {
  return solve_scheme(SchemeKind::DB, grid, tc, opts);
}

std::vector<double> reconstruct_micro(const Grid& grid, const SolveResult& result,
                                      const EpsilonField& eps) {
  if (result.q_h.size() != result.u_h.size()) {
    throw std::logic_error("reconstruct_micro: result carries no micro unknown");
  }
  std::vector<double> p(result.u_h.size());
  for (std::size_t n = 0; n < p.size(); ++n) {
    const double x = grid.x(grid.node_i(static_cast<int>(n)));
    p[n] = result.u_h[n] - eps.value(x) * result.q_h[n];
  }
  return p;
}

namespace {

struct Interp {
  double value;
  Vec2 grad;
};

Interp interpolate(const std::vector<double>& nodal, const std::array<int, 9>& nodes,
                   const std::array<ShapeValue, 9>& sh, double hx, double hy) {
  Interp r{0.0, {0.0, 0.0}};
  for (int a = 0; a < 9; ++a) {
    const double c = nodal[nodes[a]];
    r.value += c * sh[a].value;
    r.grad[0] += c * sh[a].d_xi / hx;
    r.grad[1] += c * sh[a].d_eta / hy;
  }
  return r;
}

bool carries_micro(SchemeKind s) {
  return s == SchemeKind::MM || s == SchemeKind::MM_VAR_EPS || s == SchemeKind::LIMIT;
}

}  // namespace

ErrorReport errors_against_exact(const Grid& grid, const SolveResult& result,
                                 const TestCase& tc, const QuadRule& rule) {
  if (static_cast<int>(result.u_h.size()) != grid.num_nodes()) {
    throw std::logic_error("errors_against_exact: solution does not match grid");
  }
  const bool with_q = carries_micro(result.scheme) && tc.has_q_exact() &&
                      result.q_h.size() == result.u_h.size();
  const ShapeTable shapes(rule);
  double e0 = 0.0, e1 = 0.0, n0 = 0.0, n1 = 0.0, q0 = 0.0, q1 = 0.0;
  for (int ey = 0; ey < grid.elements_y(); ++ey) {
    for (int ex = 0; ex < grid.elements_x(); ++ex) {
      const auto nodes = grid.element_nodes(ex, ey);
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const auto m = map_to_element(grid, ex, ey, rule.points[q][0], rule.points[q][1]);
        const double w = rule.weights[q] * m.jacobian_det;
        const Interp uh = interpolate(result.u_h, nodes, shapes.at[q], grid.hx(), grid.hy());
        const ScalarSample ue = tc.u_exact(m.x, m.y);
        const double dv = uh.value - ue.value;
        const double dx = uh.grad[0] - ue.grad[0];
        const double dy = uh.grad[1] - ue.grad[1];
        e0 += w * dv * dv;
        e1 += w * (dx * dx + dy * dy);
        n0 += w * uh.value * uh.value;
        n1 += w * (uh.grad[0] * uh.grad[0] + uh.grad[1] * uh.grad[1]);
        if (with_q) {
          const Interp qh = interpolate(result.q_h, nodes, shapes.at[q], grid.hx(), grid.hy());
          const ScalarSample qe = tc.q_exact(m.x, m.y);
          const double qv = qh.value - qe.value;
          const double qx = qh.grad[0] - qe.grad[0];
          const double qy = qh.grad[1] - qe.grad[1];
          q0 += w * qv * qv;
          q1 += w * (qx * qx + qy * qy);
        }
      }
    }
  }
  ErrorReport r;
  r.l2_abs_u = std::sqrt(e0);
  r.h1_abs_u = std::sqrt(e0 + e1);
  r.l2_rel_u = n0 > 0.0 ? r.l2_abs_u / std::sqrt(n0) : r.l2_abs_u;
  r.h1_rel_u = n0 + n1 > 0.0 ? r.h1_abs_u / std::sqrt(n0 + n1) : r.h1_abs_u;
  if (with_q) {
    r.l2_abs_q = std::sqrt(q0);
    r.h1_abs_q = std::sqrt(q0 + q1);
  }
  return r;
}

double parallel_gradient_norm(const Grid& grid, const AnisotropySpec& spec,
                              const std::vector<double>& nodal,
                              const QuadRule& rule) {
  if (static_cast<int>(nodal.size()) != grid.num_nodes()) {
    throw std::logic_error("parallel_gradient_norm: field does not match grid");
  }
  const ShapeTable shapes(rule);
  double s = 0.0;
  for (int ey = 0; ey < grid.elements_y(); ++ey) {
    for (int ex = 0; ex < grid.elements_x(); ++ex) {
      const auto nodes = grid.element_nodes(ex, ey);
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const auto m = map_to_element(grid, ex, ey, rule.points[q][0], rule.points[q][1]);
        const Interp v = interpolate(nodal, nodes, shapes.at[q], grid.hx(), grid.hy());
        const Vec2 b = spec.b(m.x, m.y);
        const double d = b[0] * v.grad[0] + b[1] * v.grad[1];
        s += rule.weights[q] * m.jacobian_det * d * d;
      }
    }
  }
  return std::sqrt(s);
}

}  // namespace anisoap
