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

#include "anisoap/anisoap.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>

#include "anisoap/analysis.hpp"
#include "anisoap/config.hpp"
#include "anisoap/errors.hpp"
#include "anisoap/presets.hpp"
#include "anisoap/schemes.hpp"

struct ap_result {
  anisoap::SolveResult solve;
  anisoap::ErrorReport errors;
};

namespace {

thread_local std::string g_last_error;

ap_status fail(ap_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <typename F>
ap_status guarded(F&& body) {
  try {
    return body();
  } catch (const anisoap::ConfigError& e) {
    return fail(AP_ERR_CONFIG, e.what());
  } catch (const anisoap::SolverFailure& e) {
    return fail(AP_ERR_SOLVER, e.what());
  } catch (const anisoap::IoError& e) {
    return fail(AP_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(AP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(AP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(AP_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

anisoap::SchemeKind to_kind(ap_scheme s) {
  switch (s) {
    case AP_SCHEME_P: return anisoap::SchemeKind::P;
    case AP_SCHEME_MM: return anisoap::SchemeKind::MM;
    case AP_SCHEME_MM_VAR_EPS: return anisoap::SchemeKind::MM_VAR_EPS;
    case AP_SCHEME_DB: return anisoap::SchemeKind::DB;
    case AP_SCHEME_LIMIT: return anisoap::SchemeKind::LIMIT;
  }
  throw anisoap::ConfigError("unknown scheme code " + std::to_string(static_cast<int>(s)));
}

}  // namespace

extern "C" {

const char* ap_version(void) { return "0.1.0"; }

const char* ap_last_error(void) { return g_last_error.c_str(); }

void ap_problem_defaults(ap_problem* p) {
  if (!p) return;
  p->case_name = "const_b";
  p->n = 20;
  p->eps = 1.0;
  p->eps_min = 1.0;
  p->a = 50.0;
  p->x0 = 0.25;
  p->alpha = 2.0;
  p->m = 1;
}

void ap_options_defaults(ap_options* o) {
  if (!o) return;
  o->estimate_condition = 0;
  o->quad_order = 4;
}

ap_status ap_scheme_parse(const char* name, ap_scheme* out) {
  return guarded([&] {
    if (!name || !out) return fail(AP_ERR_CONFIG, "ap_scheme_parse: null argument");
    *out = static_cast<ap_scheme>(anisoap::parse_scheme(name));
    return AP_OK;
  });
}

ap_status ap_solve(ap_scheme scheme, const ap_problem* problem, const ap_options* options,
                   ap_result** out) {
  return guarded([&] {
    if (!problem || !out) return fail(AP_ERR_CONFIG, "ap_solve: null argument");
    if (!problem->case_name) return fail(AP_ERR_CONFIG, "ap_solve: case name missing");
    *out = nullptr;
    ap_options opts;
    ap_options_defaults(&opts);
    if (options) opts = *options;

    anisoap::CaseRequest req;
    req.name = problem->case_name;
    req.eps = problem->eps;
    req.eps_min = problem->eps_min;
    req.a = problem->a;
    req.x0 = problem->x0;
    req.alpha = problem->alpha;
    req.m = problem->m;
    const anisoap::SchemeKind kind = to_kind(scheme);
    if (kind == anisoap::SchemeKind::LIMIT) req.eps = 0.0;
    const anisoap::TestCase tc = anisoap::make_case(req);
    const anisoap::Grid grid(problem->n, problem->n);
    const anisoap::QuadRule rule = anisoap::error_quad_rule(opts.quad_order);

    auto res = std::make_unique<ap_result>();
    anisoap::SolveOptions so;
    so.estimate_condition = opts.estimate_condition != 0;
    so.keep_system = true;
    res->solve = anisoap::solve_scheme(kind, grid, tc, so);
    res->errors = anisoap::errors_against_exact(grid, res->solve, tc, rule);
    *out = res.release();
    return AP_OK;
  });
}

void ap_result_destroy(ap_result* result) { delete result; }

ap_status ap_result_info(const ap_result* r, ap_info* out) {
  if (!r || !out) return fail(AP_ERR_CONFIG, "ap_result_info: null argument");
  out->rows = r->solve.rows;
  out->nnz = r->solve.nnz;
  out->assembly_ms = r->solve.assembly_ms;
  out->factor_ms = r->solve.factor_ms;
  out->solve_ms = r->solve.solve_ms;
  out->residual = r->solve.residual;
  out->condition = r->solve.condition.value_or(std::numeric_limits<double>::quiet_NaN());
  out->pivot_fallback = r->solve.pivot_fallback ? 1 : 0;
  return AP_OK;
}

ap_status ap_result_errors(const ap_result* r, ap_errors* out) {
  if (!r || !out) return fail(AP_ERR_CONFIG, "ap_result_errors: null argument");
  out->l2_abs_u = r->errors.l2_abs_u;
  out->h1_abs_u = r->errors.h1_abs_u;
  out->l2_rel_u = r->errors.l2_rel_u;
  out->h1_rel_u = r->errors.h1_rel_u;
  out->l2_abs_q = r->errors.l2_abs_q;
  out->h1_abs_q = r->errors.h1_abs_q;
  return AP_OK;
}

ap_status ap_result_field(const ap_result* r, ap_field field, double* data, size_t capacity,
                          size_t* len) {
  if (!r || !len) return fail(AP_ERR_CONFIG, "ap_result_field: null argument");
  const std::vector<double>* v = nullptr;
  switch (field) {
    case AP_FIELD_U: v = &r->solve.u_h; break;
    case AP_FIELD_Q: v = &r->solve.q_h; break;
    case AP_FIELD_P: v = &r->solve.p_h; break;
    case AP_FIELD_LAMBDA: v = &r->solve.lambda_h; break;
    case AP_FIELD_L: v = &r->solve.l_h; break;
    case AP_FIELD_MU: v = &r->solve.mu_h; break;
  }
  if (!v || v->empty()) return fail(AP_ERR_CONFIG, "ap_result_field: scheme has no such field");
  *len = v->size();
  if (!data) return AP_OK;
  if (capacity < v->size()) return fail(AP_ERR_CONFIG, "ap_result_field: buffer too small");
  std::memcpy(data, v->data(), v->size() * sizeof(double));
  return AP_OK;
}

ap_status ap_result_write_matrix(const ap_result* r, const char* path) {
  return guarded([&] {
    if (!r || !path) return fail(AP_ERR_CONFIG, "ap_result_write_matrix: null argument");
    if (!r->solve.system) return fail(AP_ERR_CONFIG, "ap_result_write_matrix: no system kept");
    anisoap::write_matrix_market(*r->solve.system, path);
    return AP_OK;
  });
}

ap_status ap_sweep_run_json(const char* config_json, char** csv_out) {
  return guarded([&] {
    if (!config_json || !csv_out) return fail(AP_ERR_CONFIG, "ap_sweep_run_json: null argument");
    *csv_out = nullptr;
    const anisoap::SweepConfig cfg = anisoap::parse_sweep_config(config_json);
    const auto rows = anisoap::run_sweep(cfg);
    *csv_out = dup_string(anisoap::to_csv(rows));
    return AP_OK;
  });
}

ap_status ap_reproduce(const char* table_id, int full, const char* csv_path, char** report_out,
                       char** csv_out) {
  return guarded([&] {
    if (!table_id || !report_out) return fail(AP_ERR_CONFIG, "ap_reproduce: null argument");
    *report_out = nullptr;
    if (csv_out) *csv_out = nullptr;
    const auto outcome = anisoap::reproduce(table_id, full != 0, csv_path ? csv_path : "");
    *report_out = dup_string(outcome.report);
    if (csv_out) *csv_out = dup_string(anisoap::to_csv(outcome.rows));
    return AP_OK;
  });
}

void ap_string_free(char* s) { std::free(s); }

}  // extern "C"
