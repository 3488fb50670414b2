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
#include <span>
#include <string>
#include <vector>

#include "anisoap/schemes.hpp"

namespace anisoap {

// One sweep = cartesian product schemes x grids x eps x m, on one case.
// For variable-eps cases the eps list holds eps_min values.
struct SweepConfig {
  std::vector<SchemeKind> schemes;
  std::string case_name = "const_b";
  std::vector<int> grids;  // n, with nx = ny = n
  std::vector<double> eps{1.0};
  std::vector<int> m{1};
  double alpha = 2.0;
  double a = 50.0;
  double x0 = 0.25;
  int quad_order = 4;
  bool estimate_condition = false;
  std::string output_path;  // CSV target, empty for none
  int threads = 0;          // 0: ANISOAP_THREADS if set, else hardware
};

// Throws ConfigError on empty lists, bad grids or an unknown case.
void validate(const SweepConfig& config);

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct SweepRow {
  SchemeKind scheme = SchemeKind::MM;
  std::string case_name;
  int nx = 0;
  int ny = 0;
  double h = 0.0;
  double eps = kNaN;
  double eps_min = kNaN;
  int m = 1;
  double alpha = 0.0;
  ErrorReport errors;
  int rows = 0;
  std::int64_t nnz = 0;
  double assembly_ms = 0.0;
  double factor_ms = 0.0;
  double solve_ms = 0.0;
  double residual = kNaN;
  double rcond_est = kNaN;  // 1 / kappa_1 estimate
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

// Solves one point of a sweep. Solver and configuration failures are
// recorded in the status field; nothing is thrown.
SweepRow run_point(SchemeKind scheme, const SweepConfig& config, int n,
                   double eps, int m);

// One row per (scheme, grid, eps, m) in config order; grid varies fastest
// after m, i.e. loops nest as scheme > eps > m > grid. Writes the CSV when
// output_path is set (IoError on failure).
std::vector<SweepRow> run_sweep(const SweepConfig& config);

// Worker count for a sweep: config.threads, else ANISOAP_THREADS, else the
// hardware concurrency; never above the number of points.
int sweep_threads(const SweepConfig& config, std::size_t points);

const std::vector<std::string>& csv_columns();
std::string csv_header();
std::string csv_line(const SweepRow& row);
std::string to_csv(std::span<const SweepRow> rows);
void write_csv(std::span<const SweepRow> rows, const std::string& path);

enum class Norm { L2, H1 };

struct ConvergenceFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // rms of log-error residuals
  int levels = 0;
  double h_min = 0.0;
  double h_max = 0.0;
};

// Errors below this are excluded from fits (10x the forcing accuracy floor).
inline constexpr double kFitErrorFloor = 1e-8;

// Least-squares slope of log(error) against log(h). Needs >= 3 points after
// dropping non-finite and sub-floor errors; ConfigError otherwise.
ConvergenceFit fit_slope(std::span<const double> h, std::span<const double> error);

// Fit over successful rows with h in [h_lo, h_hi], using absolute u errors.
ConvergenceFit fit_convergence(std::span<const SweepRow> rows, Norm norm,
                               double h_lo = 0.0,
                               double h_hi = std::numeric_limits<double>::infinity());

// MM solves of osc_b on an n x n grid, one row per m.
std::vector<SweepRow> oscillation_study(double alpha, std::span<const int> m_list,
                                        int n, double eps);

}  // namespace anisoap
