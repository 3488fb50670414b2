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

#include "anisoap/presets.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "anisoap/errors.hpp"

namespace anisoap {

namespace {

using nlohmann::json;

const json& tables() {
  static const json doc = json::parse(reference_tables_json());
  return doc.at("tables");
}

double opt_number(const json& j, const char* key) {
  return j.contains(key) ? j.at(key).get<double>() : kNaN;
}

bool same(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

bool matches(const ReferenceCell& c, const SweepRow& r) {
  return c.scheme == scheme_name(r.scheme) && c.n == r.nx && c.m == r.m &&
         same(c.eps, r.eps) && same(c.eps_min, r.eps_min);
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

const std::vector<std::string>& preset_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& t : tables()) out.push_back(t.at("id").get<std::string>());
    return out;
  }();
  return ids;
}

Preset load_preset(std::string_view id) {
  for (const auto& t : tables()) {
    if (t.at("id").get<std::string>() != id) continue;
    Preset p;
    p.id = std::string(id);
    p.title = t.at("title").get<std::string>();
    for (const auto& s : t.at("schemes")) {
      p.sweep.schemes.push_back(parse_scheme(s.get<std::string>()));
    }
    p.sweep.case_name = t.at("case").get<std::string>();
    p.sweep.eps = t.at("eps").get<std::vector<double>>();
    p.sweep.grids = t.at("grids").get<std::vector<int>>();
    if (t.contains("m")) p.sweep.m = t.at("m").get<std::vector<int>>();
    if (t.contains("alpha")) p.sweep.alpha = t.at("alpha").get<double>();
    p.full_grids = t.value("full_grids", std::vector<int>{});
    p.full_only = t.value("full_only", false);
    for (const auto& c : t.at("cells")) {
      ReferenceCell cell;
      for (const auto& [key, val] : c.items()) {
        if (key == "scheme") {
          cell.scheme = val.get<std::string>();
        } else if (key == "n") {
          cell.n = val.get<int>();
        } else if (key == "eps") {
          cell.eps = val.get<double>();
        } else if (key == "eps_min") {
          cell.eps_min = val.get<double>();
        } else if (key == "m") {
          cell.m = val.get<int>();
        } else {
          cell.values[key] = val.get<double>();
        }
      }
      p.cells.push_back(std::move(cell));
    }
    if (t.contains("thresholds")) {
      for (const auto& th : t.at("thresholds")) {
        p.thresholds.push_back({opt_number(th, "eps"), th.at("quantity").get<std::string>(),
                                th.at("below").get<double>(), th.at("m_max").get<int>()});
      }
    }
    return p;
  }
  std::string known;
  for (const auto& s : preset_ids()) known += (known.empty() ? "" : ", ") + s;
  throw ConfigError("unknown table '" + std::string(id) + "' (known: " + known + ")");
}

SweepConfig preset_sweep(const Preset& preset, bool full) {
  if (preset.full_only && !full) {
    throw ConfigError("table '" + preset.id + "' is a heavy preset; rerun with --full");
  }
  SweepConfig c = preset.sweep;
  if (full) c.grids.insert(c.grids.end(), preset.full_grids.begin(), preset.full_grids.end());
  return c;
}

double row_quantity(const SweepRow& r, const std::string& q) {
  const ErrorReport& e = r.errors;
  if (q == "l2_abs_u") return e.l2_abs_u;
  if (q == "h1_abs_u") return e.h1_abs_u;
  if (q == "l2_rel_u") return e.l2_rel_u;
  if (q == "h1_rel_u") return e.h1_rel_u;
  if (q == "l2_abs_q") return e.l2_abs_q;
  if (q == "h1_abs_q") return e.h1_abs_q;
  if (q == "rows") return r.rows;
  if (q == "nnz") return static_cast<double>(r.nnz);
  if (q == "time_s") return (r.assembly_ms + r.factor_ms + r.solve_ms) / 1000.0;
  throw ConfigError("unknown quantity '" + q + "'");
}

std::vector<CellComparison> compare(const Preset& preset, std::span<const SweepRow> rows) {
  std::vector<CellComparison> out;
  for (const ReferenceCell& cell : preset.cells) {
    const auto it = std::find_if(rows.begin(), rows.end(),
                                 [&](const SweepRow& r) { return matches(cell, r); });
    for (const auto& [q, ref] : cell.values) {
      CellComparison c;
      c.cell = &cell;
      c.quantity = q;
      c.reference = ref;
      if (it == rows.end()) {
        c.status = "not_run";
      } else if (!it->ok()) {
        c.status = it->status;
      } else {
        c.measured = row_quantity(*it, q);
        c.rel_dev = std::abs(c.measured - ref) / std::abs(ref);
        c.status = "ok";
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<ThresholdCheck> check_thresholds(const Preset& preset,
                                             std::span<const SweepRow> rows) {
  std::vector<ThresholdCheck> out;
  for (const Threshold& t : preset.thresholds) {
    std::vector<const SweepRow*> sel;
    for (const auto& r : rows) {
      if (same(r.eps, t.eps) || same(r.eps_min, t.eps)) sel.push_back(&r);
    }
    std::sort(sel.begin(), sel.end(),
              [](const SweepRow* a, const SweepRow* b) { return a->m < b->m; });
    ThresholdCheck chk{t, 0};
    for (const SweepRow* r : sel) {
      if (!r->ok() || !(row_quantity(*r, t.quantity) < t.below)) break;
      chk.measured_m_max = r->m;
    }
    out.push_back(chk);
  }
  return out;
}

std::string format_report(const Preset& preset, std::span<const SweepRow> rows) {
  std::ostringstream os;
  os << "table " << preset.id << ": " << preset.title << '\n';
  const auto cells = compare(preset, rows);
  if (!cells.empty()) {
    os << "  scheme       n     eps/eps_min  quantity   reference    measured     rel.dev\n";
    for (const auto& c : cells) {
      const double e = std::isnan(c.cell->eps) ? c.cell->eps_min : c.cell->eps;
      char line[200];
      std::snprintf(line, sizeof line, "  %-11s %5d  %11.3g  %-9s %11.3e  ", c.cell->scheme.c_str(),
                    c.cell->n, e, c.quantity.c_str(), c.reference);
      os << line;
      if (c.status == "ok") {
        os << fmt("%11.3e", c.measured) << "  " << fmt("%8.1f%%", 100.0 * c.rel_dev) << '\n';
      } else {
        os << c.status << '\n';
      }
    }
  }
  for (const auto& t : check_thresholds(preset, rows)) {
    os << "  " << t.threshold.quantity << " < " << t.threshold.below << " at eps "
       << t.threshold.eps << ": up to m = " << t.measured_m_max << " (reference "
       << t.threshold.m_max << ")\n";
  }
  return os.str();
}

ReproduceOutcome reproduce(std::string_view id, bool full, const std::string& csv_path) {
  const Preset preset = load_preset(id);
  SweepConfig cfg = preset_sweep(preset, full);
  cfg.output_path = csv_path;
  ReproduceOutcome out;
  out.rows = run_sweep(cfg);
  out.cells = compare(preset, out.rows);
  out.thresholds = check_thresholds(preset, out.rows);
  out.report = format_report(preset, out.rows);
  return out;
}

}  // namespace anisoap
