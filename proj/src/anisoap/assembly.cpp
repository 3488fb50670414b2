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

#include "anisoap/assembly.hpp"

#include <algorithm>
#include <stdexcept>

namespace anisoap {

DofMap build_dofmap(const Grid& grid, const BoundaryClass& bc, Space space) {
  if (static_cast<int>(bc.node.size()) != grid.num_nodes()) {
    throw std::logic_error("build_dofmap: boundary class does not match grid");
  }
  DofMap map;
  map.space = space;
  map.node_to_dof.assign(grid.num_nodes(), -1);
  for (int n = 0; n < grid.num_nodes(); ++n) {
    const BoundaryKind k = bc.node[n];
    const bool constrained =
        k == BoundaryKind::Dirichlet ||
        (space == Space::L && k == BoundaryKind::Inflow);
    if (!constrained) {
      map.node_to_dof[n] = map.free_count();
      map.dof_to_node.push_back(n);
    }
  }
  return map;
}

namespace {

// Range of node indices (along one axis) sharing an element with node i.
std::pair<int, int> coupled_range(int i, int n) {
  const int e_lo = i % 2 == 0 ? std::max(i / 2 - 1, 0) : (i - 1) / 2;
  const int e_hi = i % 2 == 0 ? std::min(i / 2, n / 2 - 1) : (i - 1) / 2;
  return {2 * e_lo, 2 * e_hi + 2};
}

SparseMatrix build_pattern(const Grid& grid, const DofMap& row_map,
                           const DofMap& col_map) {
  SparseMatrix m;
  m.rows = row_map.free_count();
  m.cols = col_map.free_count();
  m.row_ptr.assign(m.rows + 1, 0);
  for (int r = 0; r < m.rows; ++r) {
    const int node = row_map.dof_to_node[r];
    const auto [ilo, ihi] = coupled_range(grid.node_i(node), grid.nx());
    const auto [jlo, jhi] = coupled_range(grid.node_j(node), grid.ny());
    for (int j = jlo; j <= jhi; ++j) {
      for (int i = ilo; i <= ihi; ++i) {
        const int c = col_map.node_to_dof[grid.node(i, j)];
        if (c >= 0) m.col_idx.push_back(c);
      }
    }
    m.row_ptr[r + 1] = static_cast<std::int64_t>(m.col_idx.size());
  }
  m.values.assign(m.col_idx.size(), 0.0);
  return m;
}

void check_maps(const Grid& grid, const DofMap& map) {
  if (static_cast<int>(map.node_to_dof.size()) != grid.num_nodes()) {
    throw std::logic_error("assembly: dof map built on a different grid");
  }
}

}  // namespace

SparseMatrix assemble_form(const Grid& grid, const AnisotropySpec& spec,
                           const QuadRule& rule, const DofMap& row_map,
                           const DofMap& col_map, FormKind kind) {
  check_maps(grid, row_map);
  check_maps(grid, col_map);
  SparseMatrix m = build_pattern(grid, row_map, col_map);
  m.symmetric = &row_map == &col_map || row_map.node_to_dof == col_map.node_to_dof;

  const ShapeTable shapes(rule);
  const double hx = grid.hx();
  const double hy = grid.hy();
  const std::size_t nq = rule.size();
  std::vector<std::array<std::array<double, 2>, 9>> grads(nq);
  for (std::size_t q = 0; q < nq; ++q) {
    for (int k = 0; k < 9; ++k) {
      grads[q][k] = {shapes.at[q][k].d_xi / hx, shapes.at[q][k].d_eta / hy};
    }
  }

  std::array<double, 81> local{};
  for (int ey = 0; ey < grid.elements_y(); ++ey) {
    for (int ex = 0; ex < grid.elements_x(); ++ex) {
      local.fill(0.0);
      for (std::size_t q = 0; q < nq; ++q) {
        const auto map = map_to_element(grid, ex, ey, rule.points[q][0],
                                        rule.points[q][1]);
        const double wdet = rule.weights[q] * map.jacobian_det;
        if (kind == FormKind::Mass) {
          for (int a = 0; a < 9; ++a) {
            const double va = wdet * shapes.at[q][a].value;
            for (int b = 0; b < 9; ++b) local[9 * a + b] += va * shapes.at[q][b].value;
          }
          continue;
        }
        // Integrand is g_a^T M g_b for a 2x2 coefficient matrix M.
        Mat2 M{1.0, 0.0, 0.0, 1.0};
        if (kind != FormKind::Laplace) {
          const Vec2 b = spec.b(map.x, map.y);
          if (kind == FormKind::Perp) {
            const Mat2 P{1.0 - b[0] * b[0], -b[0] * b[1], -b[0] * b[1],
                         1.0 - b[1] * b[1]};
            const Mat2 A = spec.a_perp_at(map.x, map.y);
            const Mat2 AP{A[0] * P[0] + A[1] * P[2], A[0] * P[1] + A[1] * P[3],
                          A[2] * P[0] + A[3] * P[2], A[2] * P[1] + A[3] * P[3]};
            M = {P[0] * AP[0] + P[1] * AP[2], P[0] * AP[1] + P[1] * AP[3],
                 P[2] * AP[0] + P[3] * AP[2], P[2] * AP[1] + P[3] * AP[3]};
          } else {
            double coef = spec.a_par_at(map.x, map.y);
            if (kind == FormKind::ParEpsWeighted) coef *= spec.eps.value(map.x);
            if (kind == FormKind::ParInvEpsWeighted) coef /= spec.eps.value(map.x);
            M = {coef * b[0] * b[0], coef * b[0] * b[1], coef * b[1] * b[0],
                 coef * b[1] * b[1]};
          }
        }
        const auto& g = grads[q];
        for (int a = 0; a < 9; ++a) {
          const double ma0 = wdet * (g[a][0] * M[0] + g[a][1] * M[2]);
          const double ma1 = wdet * (g[a][0] * M[1] + g[a][1] * M[3]);
          for (int b = 0; b < 9; ++b) local[9 * a + b] += ma0 * g[b][0] + ma1 * g[b][1];
        }
      }

      const auto nodes = grid.element_nodes(ex, ey);
      for (int a = 0; a < 9; ++a) {
        const int r = row_map.node_to_dof[nodes[a]];
        if (r < 0) continue;
        const auto begin = m.col_idx.begin() + m.row_ptr[r];
        const auto end = m.col_idx.begin() + m.row_ptr[r + 1];
        for (int b = 0; b < 9; ++b) {
          const int c = col_map.node_to_dof[nodes[b]];
          if (c < 0) continue;
          const auto it = std::lower_bound(begin, end, c);
          m.values[it - m.col_idx.begin()] += local[9 * a + b];
        }
      }
    }
  }
  return m;
}

std::vector<double> assemble_load(const Grid& grid, const ScalarFn& f,
                                  const QuadRule& rule, const DofMap& map) {
  check_maps(grid, map);
  const ShapeTable shapes(rule);
  std::vector<double> load(map.free_count(), 0.0);
  for (int ey = 0; ey < grid.elements_y(); ++ey) {
    for (int ex = 0; ex < grid.elements_x(); ++ex) {
      const auto nodes = grid.element_nodes(ex, ey);
      std::array<double, 9> local{};
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const auto m = map_to_element(grid, ex, ey, rule.points[q][0], rule.points[q][1]);
        const double fw = rule.weights[q] * m.jacobian_det * f(m.x, m.y);
        for (int a = 0; a < 9; ++a) local[a] += fw * shapes.at[q][a].value;
      }
      for (int a = 0; a < 9; ++a) {
        const int r = map.node_to_dof[nodes[a]];
        if (r >= 0) load[r] += local[a];
      }
    }
  }
  return load;
}

std::vector<double> expand_to_nodes(const DofMap& map,
                                    std::span<const double> dofs) {
  if (static_cast<int>(dofs.size()) != map.free_count()) {
    throw std::logic_error("expand_to_nodes: dof vector size mismatch");
  }
  std::vector<double> nodal(map.node_to_dof.size(), 0.0);
  for (int d = 0; d < map.free_count(); ++d) nodal[map.dof_to_node[d]] = dofs[d];
  return nodal;
}

}  // namespace anisoap
