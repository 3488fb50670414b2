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

#include "anisoap/linalg.hpp"

#include <umfpack.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "anisoap/errors.hpp"

namespace anisoap {

namespace {

using Index = std::int64_t;

// The CSR arrays of K are the CSC arrays of K^T. UMFPACK therefore factors
// K^T, and "UMFPACK_At" solves with K itself.
constexpr int kSolveK = UMFPACK_At;
constexpr int kSolveKt = UMFPACK_A;

void default_control(double* control, PivotStrategy strategy) {
  umfpack_dl_defaults(control);
  control[UMFPACK_IRSTEP] = 0;
  if (strategy == PivotStrategy::Unsymmetric) {
    control[UMFPACK_STRATEGY] = UMFPACK_STRATEGY_UNSYMMETRIC;
  }
}

std::string status_text(Index status) {
  switch (status) {
    case UMFPACK_ERROR_out_of_memory: return "out of memory";
    case UMFPACK_ERROR_invalid_matrix: return "invalid matrix";
    case UMFPACK_ERROR_different_pattern: return "pattern changed";
    case UMFPACK_WARNING_singular_matrix: return "singular matrix";
    default: return "UMFPACK status " + std::to_string(status);
  }
}

double norm1(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

}  // namespace

Factorization Factorization::factorize(std::shared_ptr<const SparseMatrix> K,
                                       PivotStrategy strategy) {
  if (!K) throw std::invalid_argument("factorize: null matrix");
  if (K->rows != K->cols) throw SolverFailure("factorize: matrix is not square");
  const auto t0 = std::chrono::steady_clock::now();

  Factorization f;
  f.matrix_ = std::move(K);
  const SparseMatrix& m = *f.matrix_;
  f.strategy_ = strategy;
  f.row_ptr_.assign(m.row_ptr.begin(), m.row_ptr.end());
  f.col_idx_.assign(m.col_idx.begin(), m.col_idx.end());
  const Index n = m.rows;

  double control[UMFPACK_CONTROL];
  double info[UMFPACK_INFO];
  default_control(control, strategy);

  void* symbolic = nullptr;
  Index status = umfpack_dl_symbolic(n, n, f.row_ptr_.data(), f.col_idx_.data(),
                                   m.values.data(), &symbolic, control, info);
  if (status != UMFPACK_OK) {
    umfpack_dl_free_symbolic(&symbolic);
    throw SolverFailure("symbolic factorization failed: " + status_text(status));
  }
  status = umfpack_dl_numeric(f.row_ptr_.data(), f.col_idx_.data(),
                              m.values.data(), symbolic, &f.numeric_, control,
                              info);
  umfpack_dl_free_symbolic(&symbolic);

  if (status == UMFPACK_WARNING_singular_matrix) {
    std::vector<double> udiag(n);
    std::vector<Index> q(n);
    Index do_recip = 0;
    umfpack_dl_get_numeric(nullptr, nullptr, nullptr, nullptr, nullptr,
                           nullptr, nullptr, q.data(), udiag.data(), &do_recip,
                           nullptr, f.numeric_);
    Index pivot = -1;
    for (Index k = 0; k < n; ++k) {
      if (udiag[k] == 0.0 || !std::isfinite(udiag[k])) {
        pivot = k;
        break;
      }
    }
    // K^T was factored, so the column permutation of K^T indexes rows of K.
    throw SolverFailure("factorization: zero pivot at step " +
                        std::to_string(pivot) + " (row " +
                        std::to_string(pivot >= 0 ? q[pivot] : -1) + " of " +
                        std::to_string(n) + ")");
  }
  if (status != UMFPACK_OK) {
    throw SolverFailure("numeric factorization failed: " + status_text(status));
  }

  Index lnz = 0, unz = 0, n_row = 0, n_col = 0, nz_udiag = 0;
  umfpack_dl_get_lunz(&lnz, &unz, &n_row, &n_col, &nz_udiag, f.numeric_);
  // Factors of K^T = (LU)^T, so their roles swap.
  f.stats_.lnz = unz;
  f.stats_.unz = lnz;
  f.stats_.factor_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();
  return f;
}

Factorization::Factorization(Factorization&& o) noexcept
    : matrix_(std::move(o.matrix_)),
      row_ptr_(std::move(o.row_ptr_)),
      col_idx_(std::move(o.col_idx_)),
      numeric_(o.numeric_),
      strategy_(o.strategy_),
      stats_(o.stats_) {
  o.numeric_ = nullptr;
}

Factorization& Factorization::operator=(Factorization&& o) noexcept {
  if (this != &o) {
    if (numeric_) umfpack_dl_free_numeric(&numeric_);
    matrix_ = std::move(o.matrix_);
    row_ptr_ = std::move(o.row_ptr_);
    col_idx_ = std::move(o.col_idx_);
    numeric_ = o.numeric_;
    strategy_ = o.strategy_;
    stats_ = o.stats_;
    o.numeric_ = nullptr;
  }
  return *this;
}

Factorization::~Factorization() {
  if (numeric_) umfpack_dl_free_numeric(&numeric_);
}

namespace {

std::vector<double> umf_solve(int sys, const SparseMatrix& m,
                              const std::vector<Index>& row_ptr,
                              const std::vector<Index>& col_idx, void* numeric,
                              PivotStrategy strategy, std::span<const double> rhs) {
  if (static_cast<int>(rhs.size()) != m.rows) {
    throw std::invalid_argument("solve: right-hand side has wrong length");
  }
  std::vector<double> x(m.rows, 0.0);
  double control[UMFPACK_CONTROL];
  double info[UMFPACK_INFO];
  default_control(control, strategy);
  const auto status =
      umfpack_dl_solve(sys, row_ptr.data(), col_idx.data(), m.values.data(),
                       x.data(), rhs.data(), numeric, control, info);
  if (status != UMFPACK_OK) throw SolverFailure("solve failed: " + status_text(status));
  return x;
}

}  // namespace

std::vector<double> Factorization::solve_raw(std::span<const double> rhs) const {
  return umf_solve(kSolveK, *matrix_, row_ptr_, col_idx_, numeric_, strategy_, rhs);
}

std::vector<double> Factorization::solve_transpose_raw(
    std::span<const double> rhs) const {
  return umf_solve(kSolveKt, *matrix_, row_ptr_, col_idx_, numeric_, strategy_, rhs);
}

std::vector<double> Factorization::solve(std::span<const double> rhs) const {
  std::vector<double> x = solve_raw(rhs);
  if (relative_residual(*matrix_, x, rhs) > 1e-9) {
    const auto kx = matrix_->multiply(x);
    std::vector<double> r(rhs.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = rhs[i] - kx[i];
    const auto dx = solve_raw(r);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
  }
  return x;
}

double relative_residual(const SparseMatrix& K, std::span<const double> x,
                         std::span<const double> rhs) {
  const auto kx = K.multiply(x);
  double num = 0.0;
  for (std::size_t i = 0; i < kx.size(); ++i) num += std::abs(kx[i] - rhs[i]);
  const double den = norm1(rhs);
  return den > 0.0 ? num / den : num;
}

double condition_estimate(const SparseMatrix& K, const Factorization& F) {
  const int n = K.rows;
  if (n == 0) return 0.0;
  const double knorm = K.norm1();

  auto sign_of = [](double v) { return v >= 0.0 ? 1.0 : -1.0; };
  auto argmax_abs = [](const std::vector<double>& v) {
    return static_cast<int>(
        std::max_element(v.begin(), v.end(),
                         [](double a, double b) { return std::abs(a) < std::abs(b); }) -
        v.begin());
  };

  std::vector<double> x(n, 1.0 / n);
  std::vector<double> y = F.solve_raw(x);
  double est = norm1(y);
  if (n > 1) {
    std::vector<double> xi(n);
    for (int i = 0; i < n; ++i) xi[i] = sign_of(y[i]);
    std::vector<double> z = F.solve_transpose_raw(xi);
    int j = argmax_abs(z);
    for (int iter = 0; iter < 5; ++iter) {
      std::fill(x.begin(), x.end(), 0.0);
      x[j] = 1.0;
      y = F.solve_raw(x);
      const double est_old = est;
      est = norm1(y);
      bool same_sign = true;
      for (int i = 0; i < n && same_sign; ++i) same_sign = sign_of(y[i]) == xi[i];
      if (same_sign || est <= est_old) {
        est = std::max(est, est_old);
        break;
      }
      for (int i = 0; i < n; ++i) xi[i] = sign_of(y[i]);
      z = F.solve_transpose_raw(xi);
      const int j_last = j;
      j = argmax_abs(z);
      if (std::abs(z[j_last]) == std::abs(z[j])) break;
    }
    // Alternating-sign probe guards against unlucky starting vectors.
    for (int i = 0; i < n; ++i) {
      x[i] = (i % 2 == 0 ? 1.0 : -1.0) * (1.0 + static_cast<double>(i) / (n - 1));
    }
    y = F.solve_raw(x);
    est = std::max(est, 2.0 * norm1(y) / (3.0 * n));
  }
  if (!std::isfinite(est)) return std::numeric_limits<double>::infinity();
  return knorm * est;
}

}  // namespace anisoap
