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

#include "anisoap/config.hpp"

#include <json.hpp>

#include <set>
#include <string>

#include "anisoap/errors.hpp"

namespace anisoap {

namespace {

using nlohmann::json;

template <typename T>
std::vector<T> list_of(const json& j, const std::string& key) {
  try {
    if (j.is_array()) return j.get<std::vector<T>>();
    return {j.get<T>()};
  } catch (const json::exception&) {
    throw ConfigError("config: bad value for '" + key + "'");
  }
}

template <typename T>
T scalar(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config: bad value for '" + key + "'");
  }
}

}  // namespace

SweepConfig parse_sweep_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");

  static const std::set<std::string> known{
      "schemes", "case",       "grids",      "eps",      "eps_min", "m",     "alpha",
      "a",       "x0",         "quad_order", "estimate_condition", "threads", "output"};
  for (const auto& [key, _] : doc.items()) {
    if (!known.count(key)) throw ConfigError("config: unknown key '" + key + "'");
  }
  for (const char* req : {"schemes", "case", "grids"}) {
    if (!doc.contains(req)) throw ConfigError(std::string("config: missing '") + req + "'");
  }

  SweepConfig c;
  for (const auto& s : list_of<std::string>(doc["schemes"], "schemes")) {
    c.schemes.push_back(parse_scheme(s));
  }
  c.case_name = scalar<std::string>(doc["case"], "case");
  c.grids = list_of<int>(doc["grids"], "grids");
  const bool var_eps = is_variable_eps_case(c.case_name);
  if (doc.contains("eps") && doc.contains("eps_min")) {
    throw ConfigError("config: give either 'eps' or 'eps_min', not both");
  }
  if (doc.contains("eps")) {
    if (var_eps) throw ConfigError("config: case '" + c.case_name + "' takes 'eps_min'");
    c.eps = list_of<double>(doc["eps"], "eps");
  }
  if (doc.contains("eps_min")) {
    if (!var_eps) throw ConfigError("config: case '" + c.case_name + "' takes 'eps'");
    c.eps = list_of<double>(doc["eps_min"], "eps_min");
  }
  if (doc.contains("m")) c.m = list_of<int>(doc["m"], "m");
  if (doc.contains("alpha")) c.alpha = scalar<double>(doc["alpha"], "alpha");
  if (doc.contains("a")) c.a = scalar<double>(doc["a"], "a");
  if (doc.contains("x0")) c.x0 = scalar<double>(doc["x0"], "x0");
  if (doc.contains("quad_order")) c.quad_order = scalar<int>(doc["quad_order"], "quad_order");
  if (doc.contains("estimate_condition")) {
    c.estimate_condition = scalar<bool>(doc["estimate_condition"], "estimate_condition");
  }
  if (doc.contains("threads")) c.threads = scalar<int>(doc["threads"], "threads");
  if (doc.contains("output")) c.output_path = scalar<std::string>(doc["output"], "output");
  validate(c);
  return c;
}

}  // namespace anisoap
