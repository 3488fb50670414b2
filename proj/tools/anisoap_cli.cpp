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

// anisoap command line: run | sweep | reproduce.
//
// Exit codes: 0 success, 1 configuration error, 2 solver failure, 3 I/O.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "anisoap/anisoap.h"

namespace {

using nlohmann::json;

enum Exit { kOk = 0, kConfig = 1, kSolver = 2, kIo = 3 };

int exit_for(ap_status s) {
  switch (s) {
    case AP_OK: return kOk;
    case AP_ERR_CONFIG: return kConfig;
    case AP_ERR_SOLVER: return kSolver;
    case AP_ERR_IO: return kIo;
    default: return kSolver;
  }
}

struct CStr {
  char* p = nullptr;
  ~CStr() { ap_string_free(p); }
};

// Flags shared by run and sweep. Lists are accepted comma separated.
struct Flags {
  std::string config;
  std::vector<std::string> schemes;
  std::string case_name;
  std::vector<int> n;
  std::vector<double> eps;
  std::vector<double> eps_min;
  std::vector<int> m;
  double a = 0, x0 = 0, alpha = 0;
  int quad_order = 0;
  std::string out;
  bool cond = false;

  CLI::Option* o_a = nullptr;
  CLI::Option* o_x0 = nullptr;
  CLI::Option* o_alpha = nullptr;
  CLI::Option* o_quad = nullptr;
  CLI::Option* o_cond = nullptr;

  void add_to(CLI::App* app, bool lists) {
    app->add_option("--config", config, "JSON sweep description");
    auto* s = app->add_option("--scheme", schemes, "p, mm, mm_var_eps, db, limit");
    app->add_option("--case", case_name,
                    "const_b, var_b, osc_b, const_b_var_eps, var_b_var_eps");
    auto* n_opt = app->add_option("--n", n, "grid intervals per direction (nx = ny)");
    auto* e = app->add_option("--eps", eps, "anisotropy ratio (constant-eps cases)");
    auto* em = app->add_option("--eps-min", eps_min, "minimum eps (variable-eps cases)");
    auto* mo = app->add_option("--m", m, "oscillation number of b");
    for (auto* o : {s, n_opt, e, em, mo}) {
      if (lists) {
        o->delimiter(',');
      } else {
        o->expected(1);
      }
    }
    o_a = app->add_option("--a", a, "tanh steepness of eps(x)");
    o_x0 = app->add_option("--x0", x0, "tanh interface position");
    o_alpha = app->add_option("--alpha", alpha, "amplitude of the b perturbation");
    o_quad = app->add_option("--quad-order", quad_order, "error quadrature order (3, 4, 5)");
    o_cond = app->add_flag("--cond", cond, "estimate kappa_1 of each system");
    app->add_option("--out", out, "CSV output path");
  }

  // File values first, flags on top.
  json merged() const {
    json j = json::object();
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw std::ios_base::failure("cannot read config '" + config + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      try {
        j = json::parse(ss.str());
      } catch (const json::parse_error& err) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + err.what());
      }
      if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    }
    if (!schemes.empty()) j["schemes"] = schemes;
    if (!case_name.empty()) j["case"] = case_name;
    if (!n.empty()) j["grids"] = n;
    if (!eps.empty()) {
      j.erase("eps_min");
      j["eps"] = eps;
    }
    if (!eps_min.empty()) {
      j.erase("eps");
      j["eps_min"] = eps_min;
    }
    if (!m.empty()) j["m"] = m;
    if (o_a->count()) j["a"] = a;
    if (o_x0->count()) j["x0"] = x0;
    if (o_alpha->count()) j["alpha"] = alpha;
    if (o_quad->count()) j["quad_order"] = quad_order;
    if (o_cond->count()) j["estimate_condition"] = cond;
    if (!out.empty()) j["output"] = out;
    return j;
  }
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// Status column of the CSV body decides the exit code.
int exit_for_rows(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  int code = kOk;
  while (std::getline(in, line)) {
    const auto cols = split_csv_line(line);
    const std::string& status = cols.back();
    if (status.rfind("config_error", 0) == 0) return kConfig;
    if (status.rfind("solver_failure", 0) == 0) code = kSolver;
  }
  return code;
}

void print_summary(const std::string& csv) {
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  const auto names = split_csv_line(header);
  std::string line;
  while (std::getline(in, line)) {
    const auto cols = split_csv_line(line);
    auto col = [&](const std::string& key) -> std::string {
      for (std::size_t i = 0; i < names.size() && i < cols.size(); ++i) {
        if (names[i] == key) return cols[i];
      }
      return "";
    };
    auto g = [&](const std::string& key) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3e", std::strtod(col(key).c_str(), nullptr));
      return std::string(buf);
    };
    const bool var = col("eps") == "nan";
    std::cout << col("scheme") << " " << col("case") << " n=" << col("nx")
              << (var ? " eps_min=" + g("eps_min") : " eps=" + g("eps")) << " m=" << col("m")
              << "\n  L2 " << g("l2_abs_u") << "  H1 " << g("h1_abs_u") << "  (rel "
              << g("l2_rel_u") << ", " << g("h1_rel_u") << ")";
    if (col("l2_abs_q") != "nan") {
      std::cout << "\n  q: L2 " << g("l2_abs_q") << "  H1 " << g("h1_abs_q");
    }
    std::cout << "\n  rows " << col("rows") << "  nnz " << col("nnz") << "  factor "
              << g("factor_ms") << " ms  solve " << g("solve_ms") << " ms  residual "
              << g("residual");
    if (col("rcond_est") != "nan") std::cout << "  rcond " << g("rcond_est");
    std::cout << "\n  status " << col("status") << "\n";
  }
}

int run_json(const json& cfg, bool single) {
  if (single) {
    for (const char* key : {"schemes", "grids", "eps", "eps_min", "m"}) {
      if (cfg.contains(key) && cfg[key].is_array() && cfg[key].size() > 1) {
        std::cerr << "run: '" << key << "' takes a single value (use sweep)\n";
        return kConfig;
      }
    }
  }
  CStr csv;
  const ap_status st = ap_sweep_run_json(cfg.dump().c_str(), &csv.p);
  if (st != AP_OK) {
    std::cerr << "error: " << ap_last_error() << "\n";
    return exit_for(st);
  }
  print_summary(csv.p);
  const int code = exit_for_rows(csv.p);
  if (code == kSolver) std::cerr << "warning: at least one solve failed (see status)\n";
  if (code == kConfig) std::cerr << "error: invalid point in configuration (see status)\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anisotropic elliptic solver benchmarks (P, MM, DB schemes)"};
  app.require_subcommand(1);

  Flags run_flags;
  auto* run = app.add_subcommand("run", "solve one instance");
  run_flags.add_to(run, false);
  run_flags.out = "run.csv";

  Flags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "solve a product of schemes, grids, eps and m");
  sweep_flags.add_to(sweep, true);
  sweep_flags.out = "sweep.csv";

  std::string table;
  bool full = false;
  std::string rep_out;
  auto* rep = app.add_subcommand("reproduce", "run a table preset and compare");
  rep->add_option("table", table, "error, time, conv_e1, conv_e-100, conv_ev, osc")->required();
  rep->add_flag("--full", full, "include the heavy levels");
  rep->add_option("--out", rep_out, "CSV output path (default <table>.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*run || *sweep) {
      const bool is_run = run->parsed();
      Flags& f = is_run ? run_flags : sweep_flags;
      const json cfg = f.merged();
      if (!cfg.contains("case")) {
        std::cerr << "error: --case is required\n"
                  << (is_run ? run->help() : sweep->help());
        return kConfig;
      }
      if (!cfg.contains("schemes")) {
        std::cerr << "error: --scheme is required\n";
        return kConfig;
      }
      if (!cfg.contains("grids")) {
        std::cerr << "error: --n is required\n";
        return kConfig;
      }
      return run_json(cfg, is_run);
    }
    if (*rep) {
      if (rep_out.empty()) rep_out = table + ".csv";
      CStr report;
      const ap_status st = ap_reproduce(table.c_str(), full ? 1 : 0, rep_out.c_str(),
                                        &report.p, nullptr);
      if (st != AP_OK) {
        std::cerr << "error: " << ap_last_error() << "\n";
        return exit_for(st);
      }
      std::cout << report.p;
      return kOk;
    }
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
  return kConfig;
}
