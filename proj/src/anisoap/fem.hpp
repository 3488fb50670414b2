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

#include <array>
#include <vector>

#include "anisoap/grid.hpp"

namespace anisoap {

// Tensor-product Gauss-Legendre rule on the reference square [-1,1]^2.
struct QuadRule {
  std::vector<std::array<double, 2>> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

// The 3x3 rule used for assembly (exact up to degree 5 per direction).
QuadRule gauss_rule();

// Tensor rule with `order` points per direction, order in {3, 4, 5}.
// Used for error norms; throws ConfigError otherwise.
QuadRule error_quad_rule(int order);

struct ShapeValue {
  double value;
  double d_xi;
  double d_eta;
};

// Q2 Lagrange basis on the reference element. Local index 3*b + a where a, b
// select the reference node {-1, 0, 1} in xi and eta respectively.
ShapeValue shape_eval(int local_index, double xi, double eta);

// Basis values and reference gradients tabulated at the points of a rule.
struct ShapeTable {
  // [qp][local]
  std::vector<std::array<ShapeValue, 9>> at;

  explicit ShapeTable(const QuadRule& rule);
};

struct ElementMap {
  double x;
  double y;
  double jacobian_det;
  // Inverse Jacobian d(xi,eta)/d(x,y), row-major. Diagonal on this mesh.
  std::array<double, 4> inverse_jacobian;
};

ElementMap map_to_element(const Grid& grid, int ex, int ey, double xi,
                          double eta);

}  // namespace anisoap
