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
#include <memory>
#include <span>
#include <vector>

#include "anisoap/sparse.hpp"

namespace anisoap {

struct FactorStats {
  std::int64_t lnz = 0;  // entries in L, including the unit diagonal
  std::int64_t unz = 0;  // entries in U
  double factor_ms = 0.0;
};

// Auto lets the solver prefer diagonal pivots on nearly symmetric patterns;
// Unsymmetric always uses column-ordered threshold partial pivoting.
enum class PivotStrategy { Auto, Unsymmetric };

// Sparse LU with threshold partial pivoting (multifrontal, UMFPACK), valid
// for the unsymmetric and symmetric-indefinite saddle systems built here.
// Keeps a shared reference to the factored matrix for residual checks.
class Factorization {
 public:
  // Throws SolverFailure on structural or numerical singularity, naming the
  // first zero pivot.
  static Factorization factorize(std::shared_ptr<const SparseMatrix> K,
                                 PivotStrategy strategy = PivotStrategy::Auto);

  Factorization(Factorization&&) noexcept;
  Factorization& operator=(Factorization&&) noexcept;
  ~Factorization();

  // x with K x = rhs. One step of iterative refinement is applied when the
  // relative 1-norm residual exceeds 1e-9.
  std::vector<double> solve(std::span<const double> rhs) const;
  // Raw triangular solves, no refinement.
  std::vector<double> solve_raw(std::span<const double> rhs) const;
  std::vector<double> solve_transpose_raw(std::span<const double> rhs) const;

  const SparseMatrix& matrix() const { return *matrix_; }
  const FactorStats& stats() const { return stats_; }
  PivotStrategy strategy() const { return strategy_; }

 private:
  Factorization() = default;

  std::shared_ptr<const SparseMatrix> matrix_;
  using Index = std::int64_t;

  std::vector<Index> row_ptr_;
  std::vector<Index> col_idx_;
  void* numeric_ = nullptr;
  PivotStrategy strategy_ = PivotStrategy::Auto;
  FactorStats stats_;
};

// ||K x - rhs||_1 / ||rhs||_1 (absolute residual when rhs is zero).
double relative_residual(const SparseMatrix& K, std::span<const double> x,
                         std::span<const double> rhs);

// Estimate of kappa_1(K) = ||K||_1 ||K^-1||_1, with ||K^-1||_1 from Hager's
// power-type estimator (Higham's refinement) using solves with K and K^T.
// The result never exceeds the true value beyond rounding.
double condition_estimate(const SparseMatrix& K, const Factorization& F);

}  // namespace anisoap
