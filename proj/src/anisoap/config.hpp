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

#include <string_view>

#include "anisoap/analysis.hpp"

namespace anisoap {

// JSON sweep description. Keys:
//   schemes   string or array of strings       (required)
//   case      string                           (required)
//   grids     int or array of even ints        (required)
//   eps       number or array                  (constant-eps cases)
//   eps_min   number or array                  (variable-eps cases)
//   m         int or array, alpha, a, x0, quad_order, estimate_condition,
//   threads, output
// Unknown keys, wrong types and values failing validate() are ConfigError.
SweepConfig parse_sweep_config(std::string_view json_text);

}  // namespace anisoap
