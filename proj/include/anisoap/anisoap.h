/* Copyright 2026 The anisoap Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the anisoap solver library.
 *
 * All functions return an ap_status. On failure a message is available from
 * ap_last_error() on the calling thread until the next call that fails.
 * Strings returned through char** are owned by the caller and released with
 * ap_string_free().
 */
#ifndef ANISOAP_ANISOAP_H_
#define ANISOAP_ANISOAP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(ANISOAP_BUILDING_LIBRARY)
#define AP_API __attribute__((visibility("default")))
#else
#define AP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ap_status {
  AP_OK = 0,
  AP_ERR_CONFIG = 1,   /* invalid arguments or configuration */
  AP_ERR_SOLVER = 2,   /* singular or failed factorization */
  AP_ERR_IO = 3,       /* file could not be read or written */
  AP_ERR_INTERNAL = 4  /* anything else, including allocation failure */
} ap_status;

typedef enum ap_scheme {
  AP_SCHEME_P = 0,
  AP_SCHEME_MM = 1,
  AP_SCHEME_MM_VAR_EPS = 2,
  AP_SCHEME_DB = 3,
  AP_SCHEME_LIMIT = 4
} ap_scheme;

/* Manufactured test problem on [0,1]^2 with an n x n node-interval grid
 * (n even). Names: const_b, var_b, osc_b, const_b_var_eps, var_b_var_eps. */
typedef struct ap_problem {
  const char* case_name;
  int n;
  double eps;     /* constant-eps cases */
  double eps_min; /* variable-eps cases */
  double a;       /* tanh steepness, default 50 */
  double x0;      /* tanh interface, default 0.25 */
  double alpha;   /* default 2 */
  int m;          /* default 1 */
} ap_problem;

typedef struct ap_options {
  int estimate_condition; /* nonzero: compute a kappa_1 estimate */
  int quad_order;         /* error quadrature points per direction: 3, 4, 5 */
} ap_options;

typedef struct ap_info {
  int rows;
  int64_t nnz;
  double assembly_ms;
  double factor_ms;
  double solve_ms;
  double residual;
  double condition; /* NaN when not estimated */
  int pivot_fallback;
} ap_info;

typedef struct ap_errors {
  double l2_abs_u;
  double h1_abs_u;
  double l2_rel_u;
  double h1_rel_u;
  double l2_abs_q; /* NaN when not available */
  double h1_abs_q;
} ap_errors;

typedef enum ap_field {
  AP_FIELD_U = 0,
  AP_FIELD_Q = 1,
  AP_FIELD_P = 2,
  AP_FIELD_LAMBDA = 3,
  AP_FIELD_L = 4,
  AP_FIELD_MU = 5
} ap_field;

typedef struct ap_result ap_result;

AP_API const char* ap_version(void);
AP_API const char* ap_last_error(void);

/* Fills defaults: const_b, n = 20, eps = 1, eps_min = 1, a = 50, x0 = 0.25,
 * alpha = 2, m = 1; no condition estimate, quadrature order 4. */
AP_API void ap_problem_defaults(ap_problem* problem);
AP_API void ap_options_defaults(ap_options* options);

AP_API ap_status ap_scheme_parse(const char* name, ap_scheme* out);

AP_API ap_status ap_solve(ap_scheme scheme, const ap_problem* problem,
                          const ap_options* options, ap_result** out);
AP_API void ap_result_destroy(ap_result* result);

AP_API ap_status ap_result_info(const ap_result* result, ap_info* out);
AP_API ap_status ap_result_errors(const ap_result* result, ap_errors* out);
/* Nodal values, (n+1)^2 entries in row-major order (x fastest). With
 * data == NULL only *len is set. AP_ERR_CONFIG if the scheme has no such
 * field or capacity is too small. */
AP_API ap_status ap_result_field(const ap_result* result, ap_field field,
                                 double* data, size_t capacity, size_t* len);
/* Matrix Market dump of the assembled system. */
AP_API ap_status ap_result_write_matrix(const ap_result* result, const char* path);

/* Sweep described by a JSON object (see README for keys). Writes the CSV
 * text to *csv_out. */
AP_API ap_status ap_sweep_run_json(const char* config_json, char** csv_out);

/* Runs a table preset. *report_out receives the comparison report and, if
 * csv_out is not NULL, *csv_out the CSV text. csv_path may be NULL. */
AP_API ap_status ap_reproduce(const char* table_id, int full, const char* csv_path,
                              char** report_out, char** csv_out);

AP_API void ap_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* ANISOAP_ANISOAP_H_ */
