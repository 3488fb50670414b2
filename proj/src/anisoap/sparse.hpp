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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace anisoap {

// Compressed sparse row matrix. Column indices are sorted within each row.
// The stored pattern is the element-connectivity pattern; entries that happen
// to evaluate to zero are kept so counts depend on the mesh only.
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> row_ptr{0};
  std::vector<int> col_idx;
  std::vector<double> values;
  bool symmetric = false;

  std::int64_t nnz() const { return static_cast<std::int64_t>(values.size()); }

  // Returns 0 when (i, j) is not in the pattern.
  double at(int i, int j) const;

  std::vector<double> multiply(std::span<const double> x) const;
  std::vector<double> multiply_transpose(std::span<const double> x) const;
  SparseMatrix transpose() const;
  // Max column sum of absolute values.
  double norm1() const;
  double max_abs_asymmetry() const;
};

// sa * a + sb * b over the union of both patterns.
SparseMatrix add(const SparseMatrix& a, double sa, const SparseMatrix& b,
                 double sb);

struct Block {
  int block_row;
  int block_col;
  const SparseMatrix* matrix;
  double scale = 1.0;
};

// Stacks scaled blocks into one matrix. Blocks sharing a (row, col) slot are
// summed. Empty slots stay structurally empty.
SparseMatrix assemble_blocks(std::span<const int> row_sizes,
                             std::span<const int> col_sizes,
                             std::span<const Block> blocks);

// Matrix Market "coordinate real general" text. Throws IoError.
void write_matrix_market(const SparseMatrix& m, const std::string& path);

}  // namespace anisoap
