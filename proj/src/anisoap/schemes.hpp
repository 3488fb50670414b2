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

#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "anisoap/assembly.hpp"
#include "anisoap/cases.hpp"
#include "anisoap/fem.hpp"
#include "anisoap/grid.hpp"
#include "anisoap/sparse.hpp"

namespace anisoap {

// P: singular perturbation. MM: micro-macro with constant eps. MM_VAR_EPS:
// micro-macro with eps(x) inside the integrals. DB: five-field duality-based.
// LIMIT: MM with eps = 0.
enum class SchemeKind { P, MM, MM_VAR_EPS, DB, LIMIT };

std::string_view scheme_name(SchemeKind kind);
// Accepts p, mm, mm_var_eps, db, limit (case-insensitive). Throws ConfigError.
SchemeKind parse_scheme(std::string_view name);

struct SolveOptions {
  bool estimate_condition = false;
  bool keep_system = false;  // retain the assembled matrix in the result
};

struct SolveResult {
  SchemeKind scheme = SchemeKind::MM;
  std::vector<double> u_h;  // nodal, constrained nodes carry 0
  std::vector<double> q_h;  // MM / MM_VAR_EPS / LIMIT micro part, DB fluctuation
  std::vector<double> p_h, lambda_h, l_h, mu_h;  // DB only
  int rows = 0;
  std::int64_t nnz = 0;
  double assembly_ms = 0.0;
  double factor_ms = 0.0;
  double solve_ms = 0.0;
  double residual = 0.0;  // ||K x - rhs||_1 / ||rhs||_1
  bool pivot_fallback = false;  // refactored with unsymmetric pivoting
  std::optional<double> condition;  // kappa_1 estimate
  std::shared_ptr<const SparseMatrix> system;
  std::vector<double> rhs;
};

// Assembled linear system of one scheme plus the dof maps it lives on.
struct SchemeSystem {
  SchemeKind scheme;
  DofMap v_map;
  DofMap l_map;
  std::vector<int> block_sizes;
  std::shared_ptr<const SparseMatrix> matrix;
  std::vector<double> rhs;
};

// Block layout per scheme:
//   P:  [A_par/eps + A_perp] on V
//   MM: [[A_perp, A_par^{VL}], [A_par^{LV}, -A_par,eps^{LL}]] on V x L
//   DB: (p, lambda, q, l, mu) on V x L x V x V x L, rows
//       A_perp p + A_perp q + A_par lambda             = f
//       A_par p                                        = 0
//       eps A_perp p + (A_par + eps A_perp) q + M l    = eps f
//       M q + A_par mu                                 = 0
//       A_par l                                        = 0
SchemeSystem assemble_scheme(SchemeKind scheme, const Grid& grid,
                             const TestCase& tc, const QuadRule& rule);

SolveResult solve_scheme(SchemeKind scheme, const Grid& grid,
                         const TestCase& tc, const SolveOptions& opts = {});

SolveResult solve_P(const Grid& grid, const TestCase& tc, const SolveOptions& opts = {});
SolveResult solve_MM(const Grid& grid, const TestCase& tc, const SolveOptions& opts = {});
SolveResult solve_DB(const Grid& grid, const TestCase& tc, const SolveOptions& opts = {});

// Macro part p_h = u_h - eps(node) q_h, nodewise.
std::vector<double> reconstruct_micro(const Grid& grid, const SolveResult& result,
                                      const EpsilonField& eps);

struct ErrorReport {
  double l2_abs_u = 0.0;
  double h1_abs_u = 0.0;
  double l2_rel_u = 0.0;
  double h1_rel_u = 0.0;
  double l2_abs_q = std::numeric_limits<double>::quiet_NaN();
  double h1_abs_q = std::numeric_limits<double>::quiet_NaN();
};

// Absolute and relative (normalised by the computed solution) L2 and full H1
// errors; q errors for schemes carrying the micro unknown when the case has a
// closed-form q.
ErrorReport errors_against_exact(const Grid& grid, const SolveResult& result,
                                 const TestCase& tc, const QuadRule& rule);

// || b . grad v_h ||_L2 for a nodal Q2 field.
double parallel_gradient_norm(const Grid& grid, const AnisotropySpec& spec,
                              const std::vector<double>& nodal,
                              const QuadRule& rule);

}  // namespace anisoap
