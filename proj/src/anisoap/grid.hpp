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
#include <cstdint>
#include <functional>
#include <vector>

namespace anisoap {

struct Rect {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
};

// Structured Cartesian mesh carrying a Q2 node lattice. Each Q2 element spans
// two intervals per direction, so nx and ny must be even. Nodes are numbered
// lexicographically, x fastest: node(i, j) = j * (nx + 1) + i.
class Grid {
 public:
  Grid(int nx, int ny, Rect rect = {});

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  const Rect& rect() const { return rect_; }

  int nodes_x() const { return nx_ + 1; }
  int nodes_y() const { return ny_ + 1; }
  int num_nodes() const { return (nx_ + 1) * (ny_ + 1); }
  int elements_x() const { return nx_ / 2; }
  int elements_y() const { return ny_ / 2; }
  int num_elements() const { return elements_x() * elements_y(); }

  int node(int i, int j) const { return j * (nx_ + 1) + i; }
  int node_i(int node) const { return node % (nx_ + 1); }
  int node_j(int node) const { return node / (nx_ + 1); }
  double x(int i) const { return rect_.x_min + i * hx_; }
  double y(int j) const { return rect_.y_min + j * hy_; }

  bool on_boundary(int i, int j) const {
    return i == 0 || j == 0 || i == nx_ || j == ny_;
  }

  // The 3x3 patch of nodes of element (ex, ey), lexicographic (x fastest).
  // Throws std::out_of_range for an invalid element index.
  std::array<int, 9> element_nodes(int ex, int ey) const;

  bool same_layout(const Grid& other) const;

 private:
  int nx_;
  int ny_;
  Rect rect_;
  double hx_;
  double hy_;
};

// Convenience matching the usual [0,1]^2 setup.
Grid build_grid(int nx, int ny, Rect rect = {});

enum class BoundaryKind : std::uint8_t { Interior, Dirichlet, Inflow, Outflow };

enum class Side : std::uint8_t { Left, Right, Bottom, Top };

// Boundary labels per node and per boundary edge segment.
//
// A segment is the interval between two consecutive boundary nodes on one
// side, indexed by its lower node index along that side.
struct BoundaryClass {
  std::vector<BoundaryKind> node;  // one per grid node
  std::array<std::vector<BoundaryKind>, 4> edge;  // indexed by Side

  int count(BoundaryKind kind) const;
  int boundary_node_count() const;
};

using DirectionEval = std::function<std::array<double, 2>(double, double)>;

inline constexpr double kDefaultBnTolerance = 1e-12;

// Labels every boundary node by the sign of b.n. Corner nodes become
// Dirichlet if either adjacent side is Dirichlet there; an inflow/outflow
// conflict at a corner resolves to Inflow.
BoundaryClass classify_boundary(const Grid& grid, const DirectionEval& b,
                                double tol_bn = kDefaultBnTolerance);

}  // namespace anisoap
