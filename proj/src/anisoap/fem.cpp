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

#include "anisoap/fem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "anisoap/errors.hpp"

namespace anisoap {

namespace {

struct Rule1d {
  std::vector<double> nodes;
  std::vector<double> weights;
};

Rule1d gauss_1d(int order) {
  switch (order) {
    case 3: {
      const double r = std::sqrt(3.0 / 5.0);
      return {{-r, 0.0, r}, {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0}};
    }
    case 4: {
      const double a = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
      const double b = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
      const double wa = (18.0 + std::sqrt(30.0)) / 36.0;
      const double wb = (18.0 - std::sqrt(30.0)) / 36.0;
      return {{-b, -a, a, b}, {wb, wa, wa, wb}};
    }
    case 5: {
      const double a = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
      const double b = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
      const double wa = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
      const double wb = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
      return {{-b, -a, 0.0, a, b}, {wb, wa, 128.0 / 225.0, wa, wb}};
    }
    default:
      throw ConfigError("quadrature: unsupported order " +
                        std::to_string(order) + " (expected 3, 4 or 5)");
  }
}

QuadRule tensor(const Rule1d& r) {
  QuadRule rule;
  for (std::size_t j = 0; j < r.nodes.size(); ++j) {
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      rule.points.push_back({r.nodes[i], r.nodes[j]});
      rule.weights.push_back(r.weights[i] * r.weights[j]);
    }
  }
  return rule;
}

// 1D quadratic Lagrange polynomials with nodes -1, 0, 1.
inline double lagrange(int a, double t) {
  switch (a) {
    case 0: return 0.5 * t * (t - 1.0);
    case 1: return 1.0 - t * t;
    default: return 0.5 * t * (t + 1.0);
  }
}

inline double lagrange_d(int a, double t) {
  switch (a) {
    case 0: return t - 0.5;
    case 1: return -2.0 * t;
    default: return t + 0.5;
  }
}

}  // namespace

QuadRule gauss_rule() { return tensor(gauss_1d(3)); }

QuadRule error_quad_rule(int order) { return tensor(gauss_1d(order)); }

ShapeValue shape_eval(int local_index, double xi, double eta) {
  if (local_index < 0 || local_index > 8) {
    throw std::out_of_range("shape_eval: local index " +
                            std::to_string(local_index) + " out of range");
  }
  const int a = local_index % 3;
  const int b = local_index / 3;
  const double lx = lagrange(a, xi);
  const double ly = lagrange(b, eta);
  return {lx * ly, lagrange_d(a, xi) * ly, lx * lagrange_d(b, eta)};
}

ShapeTable::ShapeTable(const QuadRule& rule) : at(rule.size()) {
  for (std::size_t q = 0; q < rule.size(); ++q) {
    for (int k = 0; k < 9; ++k) {
      at[q][k] = shape_eval(k, rule.points[q][0], rule.points[q][1]);
    }
  }
}

ElementMap map_to_element(const Grid& grid, int ex, int ey, double xi,
                          double eta) {
  const double hx = grid.hx();
  const double hy = grid.hy();
  ElementMap m;
  m.x = grid.rect().x_min + (2 * ex + 1 + xi) * hx;
  m.y = grid.rect().y_min + (2 * ey + 1 + eta) * hy;
  m.jacobian_det = hx * hy;
  m.inverse_jacobian = {1.0 / hx, 0.0, 0.0, 1.0 / hy};
  return m;
}

}  // namespace anisoap
