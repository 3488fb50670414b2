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

#include "anisoap/grid.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "anisoap/errors.hpp"

namespace anisoap {

Grid::Grid(int nx, int ny, Rect rect) : nx_(nx), ny_(ny), rect_(rect) {
  if (nx < 2 || ny < 2 || nx % 2 != 0 || ny % 2 != 0) {
    throw ConfigError("grid: nx and ny must be even and >= 2 (got nx=" +
                      std::to_string(nx) + ", ny=" + std::to_string(ny) + ")");
  }
  if (!(rect.x_max > rect.x_min) || !(rect.y_max > rect.y_min)) {
    throw ConfigError("grid: degenerate rectangle");
  }
  hx_ = (rect.x_max - rect.x_min) / nx;
  hy_ = (rect.y_max - rect.y_min) / ny;
}

std::array<int, 9> Grid::element_nodes(int ex, int ey) const {
  if (ex < 0 || ey < 0 || ex >= elements_x() || ey >= elements_y()) {
    throw std::out_of_range("grid: element index (" + std::to_string(ex) +
                            ", " + std::to_string(ey) + ") out of range");
  }
  std::array<int, 9> nodes{};
  for (int b = 0; b < 3; ++b) {
    for (int a = 0; a < 3; ++a) {
      nodes[3 * b + a] = node(2 * ex + a, 2 * ey + b);
    }
  }
  return nodes;
}

bool Grid::same_layout(const Grid& other) const {
  return nx_ == other.nx_ && ny_ == other.ny_ &&
         rect_.x_min == other.rect_.x_min && rect_.x_max == other.rect_.x_max &&
         rect_.y_min == other.rect_.y_min && rect_.y_max == other.rect_.y_max;
}

Grid build_grid(int nx, int ny, Rect rect) { return Grid(nx, ny, rect); }

int BoundaryClass::count(BoundaryKind kind) const {
  return static_cast<int>(std::count(node.begin(), node.end(), kind));
}

int BoundaryClass::boundary_node_count() const {
  return static_cast<int>(node.size()) - count(BoundaryKind::Interior);
}

namespace {

constexpr std::array<std::array<double, 2>, 4> kNormals = {{
    {-1.0, 0.0},  // Left
    {1.0, 0.0},   // Right
    {0.0, -1.0},  // Bottom
    {0.0, 1.0},   // Top
}};

BoundaryKind label(const std::array<double, 2>& b, Side side, double tol) {
  const auto& n = kNormals[static_cast<int>(side)];
  const double bn = b[0] * n[0] + b[1] * n[1];
  if (bn < -tol) return BoundaryKind::Inflow;
  if (bn > tol) return BoundaryKind::Outflow;
  return BoundaryKind::Dirichlet;
}

BoundaryKind merge_corner(BoundaryKind a, BoundaryKind b) {
  if (a == BoundaryKind::Dirichlet || b == BoundaryKind::Dirichlet) {
    return BoundaryKind::Dirichlet;
  }
  if (a == BoundaryKind::Inflow || b == BoundaryKind::Inflow) {
    return BoundaryKind::Inflow;
  }
  return BoundaryKind::Outflow;
}

}  // namespace

BoundaryClass classify_boundary(const Grid& grid, const DirectionEval& b,
                                double tol_bn) {
  BoundaryClass bc;
  bc.node.assign(grid.num_nodes(), BoundaryKind::Interior);

  const int nx = grid.nx();
  const int ny = grid.ny();
  auto side_nodes = [&](Side side, int k) {
    switch (side) {
      case Side::Left: return std::pair{0, k};
      case Side::Right: return std::pair{nx, k};
      case Side::Bottom: return std::pair{k, 0};
      case Side::Top: return std::pair{k, ny};
    }
    return std::pair{0, 0};
  };

  for (Side side : {Side::Left, Side::Right, Side::Bottom, Side::Top}) {
    const bool vertical = side == Side::Left || side == Side::Right;
    const int count = vertical ? ny : nx;
    auto& edges = bc.edge[static_cast<int>(side)];
    edges.resize(count);
    for (int k = 0; k < count; ++k) {
      auto [i0, j0] = side_nodes(side, k);
      auto [i1, j1] = side_nodes(side, k + 1);
      const double xm = 0.5 * (grid.x(i0) + grid.x(i1));
      const double ym = 0.5 * (grid.y(j0) + grid.y(j1));
      edges[k] = label(b(xm, ym), side, tol_bn);
    }
    for (int k = 0; k <= count; ++k) {
      auto [i, j] = side_nodes(side, k);
      const BoundaryKind here = label(b(grid.x(i), grid.y(j)), side, tol_bn);
      auto& slot = bc.node[grid.node(i, j)];
      slot = slot == BoundaryKind::Interior ? here : merge_corner(slot, here);
    }
  }
  return bc;
}

}  // namespace anisoap
