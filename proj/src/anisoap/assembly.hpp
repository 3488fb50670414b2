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

#include <functional>
#include <span>
#include <vector>

#include "anisoap/fem.hpp"
#include "anisoap/fields.hpp"
#include "anisoap/grid.hpp"
#include "anisoap/sparse.hpp"

namespace anisoap {

// V: zero on the Dirichlet part. L: additionally zero on the inflow part.
enum class Space { V, L };

struct DofMap {
  Space space = Space::V;
  std::vector<int> node_to_dof;  // -1 for constrained nodes
  std::vector<int> dof_to_node;

  int free_count() const { return static_cast<int>(dof_to_node.size()); }
  bool is_free(int node) const { return node_to_dof[node] >= 0; }
};

DofMap build_dofmap(const Grid& grid, const BoundaryClass& bc, Space space);

enum class FormKind {
  Perp,               // (A_perp grad_perp u) . grad_perp v
  Par,                // A_par (b.grad u)(b.grad v)
  ParEpsWeighted,     // eps(x) A_par (b.grad u)(b.grad v)
  ParInvEpsWeighted,  // A_par / eps(x) (b.grad u)(b.grad v)
  Mass,               // u v
  Laplace,            // grad u . grad v
};

// Entry (I, J) integrates the form with trial function of col_map dof J and
// test function of row_map dof I.
SparseMatrix assemble_form(const Grid& grid, const AnisotropySpec& spec,
                           const QuadRule& rule, const DofMap& row_map,
                           const DofMap& col_map, FormKind kind);

using ScalarFn = std::function<double(double, double)>;

std::vector<double> assemble_load(const Grid& grid, const ScalarFn& f,
                                  const QuadRule& rule, const DofMap& map);

// Scatters free-dof values back onto all grid nodes (constrained nodes get 0).
std::vector<double> expand_to_nodes(const DofMap& map,
                                    std::span<const double> dofs);

}  // namespace anisoap
