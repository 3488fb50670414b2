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

#include "anisoap/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "anisoap/errors.hpp"

namespace anisoap {

double SparseMatrix::at(int i, int j) const {
  const auto begin = col_idx.begin() + row_ptr[i];
  const auto end = col_idx.begin() + row_ptr[i + 1];
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return 0.0;
  return values[it - col_idx.begin()];
}

std::vector<double> SparseMatrix::multiply(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != cols) {
    throw std::invalid_argument("multiply: dimension mismatch");
  }
  std::vector<double> y(rows, 0.0);
  for (int i = 0; i < rows; ++i) {
    double s = 0.0;
    for (auto k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += values[k] * x[col_idx[k]];
    y[i] = s;
  }
  return y;
}

std::vector<double> SparseMatrix::multiply_transpose(
    std::span<const double> x) const {
  if (static_cast<int>(x.size()) != rows) {
    throw std::invalid_argument("multiply_transpose: dimension mismatch");
  }
  std::vector<double> y(cols, 0.0);
  for (int i = 0; i < rows; ++i) {
    for (auto k = row_ptr[i]; k < row_ptr[i + 1]; ++k) y[col_idx[k]] += values[k] * x[i];
  }
  return y;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t;
  t.rows = cols;
  t.cols = rows;
  t.symmetric = symmetric;
  t.row_ptr.assign(cols + 1, 0);
  for (int c : col_idx) ++t.row_ptr[c + 1];
  for (int i = 0; i < cols; ++i) t.row_ptr[i + 1] += t.row_ptr[i];
  t.col_idx.resize(col_idx.size());
  t.values.resize(values.size());
  std::vector<std::int64_t> next(t.row_ptr.begin(), t.row_ptr.end() - 1);
  for (int i = 0; i < rows; ++i) {
    for (auto k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      const auto dst = next[col_idx[k]]++;
      t.col_idx[dst] = i;
      t.values[dst] = values[k];
    }
  }
  return t;
}

double SparseMatrix::norm1() const {
  std::vector<double> colsum(cols, 0.0);
  for (std::size_t k = 0; k < values.size(); ++k) colsum[col_idx[k]] += std::abs(values[k]);
  return colsum.empty() ? 0.0 : *std::max_element(colsum.begin(), colsum.end());
}

double SparseMatrix::max_abs_asymmetry() const {
  if (rows != cols) throw std::invalid_argument("asymmetry of non-square matrix");
  double worst = 0.0;
  for (int i = 0; i < rows; ++i) {
    for (auto k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      worst = std::max(worst, std::abs(values[k] - at(col_idx[k], i)));
    }
  }
  return worst;
}

SparseMatrix add(const SparseMatrix& a, double sa, const SparseMatrix& b,
                 double sb) {
  if (a.rows != b.rows || a.cols != b.cols) {
    throw std::invalid_argument("add: dimension mismatch");
  }
  SparseMatrix c;
  c.rows = a.rows;
  c.cols = a.cols;
  c.symmetric = a.symmetric && b.symmetric;
  c.row_ptr.assign(a.rows + 1, 0);
  c.col_idx.reserve(std::max(a.col_idx.size(), b.col_idx.size()));
  c.values.reserve(c.col_idx.capacity());
  for (int i = 0; i < a.rows; ++i) {
    auto ka = a.row_ptr[i];
    auto kb = b.row_ptr[i];
    const auto ea = a.row_ptr[i + 1];
    const auto eb = b.row_ptr[i + 1];
    while (ka < ea || kb < eb) {
      const int ca = ka < ea ? a.col_idx[ka] : a.cols;
      const int cb = kb < eb ? b.col_idx[kb] : b.cols;
      if (ca == cb) {
        c.col_idx.push_back(ca);
        c.values.push_back(sa * a.values[ka++] + sb * b.values[kb++]);
      } else if (ca < cb) {
        c.col_idx.push_back(ca);
        c.values.push_back(sa * a.values[ka++]);
      } else {
        c.col_idx.push_back(cb);
        c.values.push_back(sb * b.values[kb++]);
      }
    }
    c.row_ptr[i + 1] = static_cast<std::int64_t>(c.col_idx.size());
  }
  return c;
}

SparseMatrix assemble_blocks(std::span<const int> row_sizes,
                             std::span<const int> col_sizes,
                             std::span<const Block> blocks) {
  const int nbr = static_cast<int>(row_sizes.size());
  const int nbc = static_cast<int>(col_sizes.size());
  std::vector<int> row_off(nbr + 1, 0);
  std::vector<int> col_off(nbc + 1, 0);
  for (int i = 0; i < nbr; ++i) row_off[i + 1] = row_off[i] + row_sizes[i];
  for (int j = 0; j < nbc; ++j) col_off[j + 1] = col_off[j] + col_sizes[j];

  // Merge blocks that share a slot first.
  std::vector<std::vector<SparseMatrix>> slot(nbr * nbc);
  for (const auto& blk : blocks) {
    if (blk.block_row < 0 || blk.block_row >= nbr || blk.block_col < 0 ||
        blk.block_col >= nbc) {
      throw std::out_of_range("assemble_blocks: block index out of range");
    }
    if (blk.matrix->rows != row_sizes[blk.block_row] ||
        blk.matrix->cols != col_sizes[blk.block_col]) {
      throw std::logic_error("assemble_blocks: block dimension mismatch");
    }
    auto& s = slot[blk.block_row * nbc + blk.block_col];
    if (s.empty()) {
      SparseMatrix scaled = *blk.matrix;
      for (double& v : scaled.values) v *= blk.scale;
      s.push_back(std::move(scaled));
    } else {
      s.front() = add(s.front(), 1.0, *blk.matrix, blk.scale);
    }
  }

  SparseMatrix out;
  out.rows = row_off[nbr];
  out.cols = col_off[nbc];
  out.row_ptr.assign(out.rows + 1, 0);
  std::int64_t total = 0;
  for (const auto& s : slot) {
    if (!s.empty()) total += s.front().nnz();
  }
  out.col_idx.reserve(total);
  out.values.reserve(total);
  for (int br = 0; br < nbr; ++br) {
    for (int i = 0; i < row_sizes[br]; ++i) {
      for (int bc = 0; bc < nbc; ++bc) {
        const auto& s = slot[br * nbc + bc];
        if (s.empty()) continue;
        const auto& m = s.front();
        for (auto k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) {
          out.col_idx.push_back(m.col_idx[k] + col_off[bc]);
          out.values.push_back(m.values[k]);
        }
      }
      out.row_ptr[row_off[br] + i + 1] = static_cast<std::int64_t>(out.col_idx.size());
    }
  }
  return out;
}

void write_matrix_market(const SparseMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows << ' ' << m.cols << ' ' << m.nnz() << '\n';
  char buf[64];
  for (int i = 0; i < m.rows; ++i) {
    for (auto k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) {
      std::snprintf(buf, sizeof buf, "%.17e", m.values[k]);
      out << i + 1 << ' ' << m.col_idx[k] + 1 << ' ' << buf << '\n';
    }
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace anisoap
