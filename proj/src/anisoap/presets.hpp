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

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "anisoap/analysis.hpp"

namespace anisoap {

// Text of data/reference_tables.json, compiled in.
std::string_view reference_tables_json();

struct ReferenceCell {
  std::string scheme;  // scheme_name() spelling
  int n = 0;
  double eps = kNaN;
  double eps_min = kNaN;
  int m = 1;
  std::map<std::string, double> values;  // quantity -> published value
};

// "value of `quantity` stays below `below` for every m <= m_max".
struct Threshold {
  double eps = kNaN;
  std::string quantity;
  double below = 0.0;
  int m_max = 0;
};

struct Preset {
  std::string id;
  std::string title;
  SweepConfig sweep;            // default levels
  std::vector<int> full_grids;  // extra levels added by --full
  bool full_only = false;
  std::vector<ReferenceCell> cells;
  std::vector<Threshold> thresholds;
};

const std::vector<std::string>& preset_ids();
// Throws ConfigError for unknown ids.
Preset load_preset(std::string_view id);
// Sweep to run; ConfigError when the preset needs `full` and it is off.
SweepConfig preset_sweep(const Preset& preset, bool full);

struct CellComparison {
  const ReferenceCell* cell = nullptr;
  std::string quantity;
  double reference = kNaN;
  double measured = kNaN;
  double rel_dev = kNaN;  // |measured - reference| / |reference|
  std::string status;     // ok, not_run, or the row's failure status
};

// Measured value of a named quantity: the CSV error columns plus rows, nnz
// and time_s (assembly + factorization + solve, seconds).
double row_quantity(const SweepRow& row, const std::string& quantity);

std::vector<CellComparison> compare(const Preset& preset, std::span<const SweepRow> rows);

struct ThresholdCheck {
  Threshold threshold;
  int measured_m_max = 0;  // largest m with all m' <= m below the bound
};

std::vector<ThresholdCheck> check_thresholds(const Preset& preset,
                                             std::span<const SweepRow> rows);

std::string format_report(const Preset& preset, std::span<const SweepRow> rows);

struct ReproduceOutcome {
  std::vector<SweepRow> rows;
  std::vector<CellComparison> cells;
  std::vector<ThresholdCheck> thresholds;
  std::string report;
};

// Runs the preset, writes the CSV when csv_path is non-empty, builds the report.
ReproduceOutcome reproduce(std::string_view id, bool full, const std::string& csv_path);

}  // namespace anisoap
