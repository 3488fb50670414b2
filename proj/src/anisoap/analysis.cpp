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

#include "anisoap/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <new>
#include <sstream>
#include <thread>

#include "anisoap/errors.hpp"

namespace anisoap {

void validate(const SweepConfig& config) {
  if (config.schemes.empty()) throw ConfigError("sweep: scheme list is empty");
  if (config.grids.empty()) throw ConfigError("sweep: grid list is empty");
  if (config.eps.empty()) throw ConfigError("sweep: eps list is empty");
  if (config.m.empty()) throw ConfigError("sweep: m list is empty");
  for (int n : config.grids) {
    if (n < 2 || n % 2 != 0) {
      throw ConfigError("sweep: grid size " + std::to_string(n) +
                        " must be even and >= 2");
    }
  }
  const auto& names = case_names();
  if (std::find(names.begin(), names.end(), config.case_name) == names.end()) {
    throw ConfigError("sweep: unknown case '" + config.case_name + "'");
  }
  if (config.quad_order < 3 || config.quad_order > 5) {
    throw ConfigError("sweep: quadrature order must be 3, 4 or 5");
  }
  if (config.threads < 0) throw ConfigError("sweep: negative thread count");
}

namespace {

std::string clean(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

SweepRow run_point(SchemeKind scheme, const SweepConfig& config, int n,
                   double eps, int m) {
  SweepRow row;
  row.scheme = scheme;
  row.case_name = config.case_name;
  row.nx = n;
  row.ny = n;
  row.h = 1.0 / n;
  row.m = m;
  row.alpha = config.alpha;

  CaseRequest req;
  req.name = config.case_name;
  req.a = config.a;
  req.x0 = config.x0;
  req.alpha = config.alpha;
  req.m = m;
  if (is_variable_eps_case(config.case_name)) {
    req.eps_min = eps;
    row.eps_min = eps;
  } else {
    req.eps = scheme == SchemeKind::LIMIT ? 0.0 : eps;
    row.eps = req.eps;
  }
  if (config.case_name == "const_b" || config.case_name == "const_b_var_eps") {
    row.alpha = 0.0;
  }

  try {
    const TestCase tc = make_case(req);
    const Grid grid(n, n);
    SolveOptions opts;
    opts.estimate_condition = config.estimate_condition;
    const SolveResult res = solve_scheme(scheme, grid, tc, opts);
    row.scheme = res.scheme;  // MM on a variable-eps case runs as MM_VAR_EPS
    row.rows = res.rows;
    row.nnz = res.nnz;
    row.assembly_ms = res.assembly_ms;
    row.factor_ms = res.factor_ms;
    row.solve_ms = res.solve_ms;
    row.residual = res.residual;
    if (res.condition) row.rcond_est = 1.0 / *res.condition;
    row.errors = errors_against_exact(grid, res, tc, error_quad_rule(config.quad_order));
  } catch (const ConfigError& e) {
    row.status = clean(std::string("config_error: ") + e.what());
  } catch (const SolverFailure& e) {
    row.status = clean(std::string("solver_failure: ") + e.what());
  } catch (const std::bad_alloc&) {
    row.status = "solver_failure: out of memory";
  }
  return row;
}

int sweep_threads(const SweepConfig& config, std::size_t points) {
  long t = config.threads;
  if (t == 0) {
    t = static_cast<long>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("ANISOAP_THREADS")) {
      char* end = nullptr;
      const long cap = std::strtol(env, &end, 10);
      if (end != env && cap >= 1) t = std::min(t, cap);
    }
  }
  return static_cast<int>(std::clamp<long>(t, 1, std::max<long>(1, points)));
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  validate(config);
  struct Point {
    SchemeKind scheme;
    double eps;
    int m;
    int n;
  };
  std::vector<Point> points;
  for (SchemeKind s : config.schemes) {
    for (double e : config.eps) {
      for (int m : config.m) {
        for (int n : config.grids) points.push_back({s, e, m, n});
      }
    }
  }

  std::vector<SweepRow> rows(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      const Point& p = points[i];
      rows[i] = run_point(p.scheme, config, p.n, p.eps, p.m);
    }
  };
  const int nthreads = sweep_threads(config, points.size());
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (!config.output_path.empty()) write_csv(rows, config.output_path);
  return rows;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{
      "scheme",   "case",     "nx",       "ny",       "h",         "eps",
      "eps_min",  "m",        "alpha",    "l2_abs_u", "h1_abs_u",  "l2_rel_u",
      "h1_rel_u", "l2_abs_q", "h1_abs_q", "rows",     "nnz",       "factor_ms",
      "solve_ms", "residual", "rcond_est", "status"};
  return cols;
}

std::string csv_header() {
  std::string s;
  for (const auto& c : csv_columns()) {
    if (!s.empty()) s += ',';
    s += c;
  }
  return s;
}

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

}  // namespace

std::string csv_line(const SweepRow& r) {
  std::ostringstream os;
  os << scheme_name(r.scheme) << ',' << r.case_name << ',' << r.nx << ',' << r.ny
     << ',' << num(r.h) << ',' << num(r.eps) << ',' << num(r.eps_min) << ','
     << r.m << ',' << num(r.alpha) << ',' << num(r.errors.l2_abs_u) << ','
     << num(r.errors.h1_abs_u) << ',' << num(r.errors.l2_rel_u) << ','
     << num(r.errors.h1_rel_u) << ',' << num(r.errors.l2_abs_q) << ','
     << num(r.errors.h1_abs_q) << ',' << r.rows << ',' << r.nnz << ','
     << num(r.factor_ms) << ',' << num(r.solve_ms) << ',' << num(r.residual) << ','
     << num(r.rcond_est) << ',' << clean(r.status);
  return os.str();
}

std::string to_csv(std::span<const SweepRow> rows) {
  std::string s = csv_header() + '\n';
  for (const auto& r : rows) s += csv_line(r) + '\n';
  return s;
}

void write_csv(std::span<const SweepRow> rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << to_csv(rows);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

ConvergenceFit fit_slope(std::span<const double> h, std::span<const double> error) {
  if (h.size() != error.size()) throw std::invalid_argument("fit_slope: size mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0) || !std::isfinite(error[i]) || error[i] < kFitErrorFloor) continue;
    lx.push_back(std::log(h[i]));
    ly.push_back(std::log(error[i]));
  }
  if (lx.size() < 3) {
    throw ConfigError("convergence fit needs at least 3 mesh levels, got " +
                      std::to_string(lx.size()));
  }
  const double k = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i] / k;
    my += ly[i] / k;
  }
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw ConfigError("convergence fit needs distinct mesh sizes");
  ConvergenceFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / k);
  fit.levels = static_cast<int>(lx.size());
  fit.h_min = std::exp(*std::min_element(lx.begin(), lx.end()));
  fit.h_max = std::exp(*std::max_element(lx.begin(), lx.end()));
  return fit;
}

ConvergenceFit fit_convergence(std::span<const SweepRow> rows, Norm norm,
                               double h_lo, double h_hi) {
  std::vector<double> h, e;
  for (const auto& r : rows) {
    if (!r.ok() || r.h < h_lo || r.h > h_hi) continue;
    h.push_back(r.h);
    e.push_back(norm == Norm::L2 ? r.errors.l2_abs_u : r.errors.h1_abs_u);
  }
  return fit_slope(h, e);
}

std::vector<SweepRow> oscillation_study(double alpha, std::span<const int> m_list,
                                        int n, double eps) {
  SweepConfig cfg;
  cfg.schemes = {SchemeKind::MM};
  cfg.case_name = "osc_b";
  cfg.grids = {n};
  cfg.eps = {eps};
  cfg.m.assign(m_list.begin(), m_list.end());
  cfg.alpha = alpha;
  return run_sweep(cfg);
}

}  // namespace anisoap
