// Copyright The clbound Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <vector>

#include <Eigen/Core>

#include "clbound/linalg.hpp"

namespace clbound {

/// Optimal value and minimizer of
///   min x^T A x  subject to  ||B x||_inf >= 1,
/// which equals 1 / max_i (B A^{-1} B^T)_ii.
struct RelaxedSolution {
  double lambda_hB = 0.0;
  int argmax_row = -1;
  std::vector<int> near_max_rows;  // rows within 1e-12 (relative) of the max
  Eigen::VectorXd minimizer;       // A^{-1} b_max / d_max
  Eigen::VectorXd diag_D;
};

enum class DiagonalMethod {
  /// Entries of A^{-1} on the Cholesky pattern via the Takahashi recurrence;
  /// each d_i is then a 6x6 quadratic form.
  kSelectedInverse,
  /// One solve pair A z = b_i per row, d_i = b_i^T z.
  kRowSolves,
};

struct SolveOptions {
  DiagonalMethod method = DiagonalMethod::kSelectedInverse;
  int threads = 1;
};

/// Sparse Cholesky factor P A P^T = L L^T, shared read-only after construction.
class SpdFactor {
 public:
  /// Throws kNotPositiveDefinite if a pivot is not positive.
  explicit SpdFactor(const SparseMatrix& A);
  ~SpdFactor();
  SpdFactor(SpdFactor&&) noexcept;
  SpdFactor& operator=(SpdFactor&&) noexcept;

  int size() const;
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;

  /// L^{-1} P b, so that ||.||^2 = b^T A^{-1} b.
  Eigen::VectorXd whiten(const Eigen::VectorXd& b) const;

  /// Entries of A^{-1} restricted to the symbolic pattern of L.
  class SelectedInverse;
  SelectedInverse selected_inverse() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

class SpdFactor::SelectedInverse {
 public:
  /// (A^{-1})_{ab}; throws kInternal if (a, b) is outside the pattern.
  double operator()(int a, int b) const;

 private:
  friend class SpdFactor;
  std::vector<int> col_start_;
  std::vector<int> rows_;
  std::vector<double> values_;
  std::vector<int> perm_;
};

/// Diagonal of B A^{-1} B^T, then the closed-form optimum.
RelaxedSolution solve_relaxed(const SparseMatrix& A, const SparseRowMatrix& B,
                              const SolveOptions& options = {});

/// Same optimum through b_hat_i = L^{-1} P b_i, lambda = 1 / max ||b_hat_i||^2.
RelaxedSolution solve_relaxed_cholesky(const SparseMatrix& A, const SparseRowMatrix& B,
                                       int threads = 1);

}  // namespace clbound
