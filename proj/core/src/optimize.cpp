// Copyright The clbound Authors.
// SPDX-License-Identifier: Apache-2.0

#include "clbound/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCholesky>

#include "clbound/error.hpp"
#include "clbound/parallel.hpp"

namespace clbound {

struct SpdFactor::Impl {
  Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> llt;
};

SpdFactor::SpdFactor(const SparseMatrix& A) : impl_(std::make_unique<Impl>()) {
  if (A.rows() != A.cols() || A.rows() == 0) {
    throw Error(ErrorCode::kInvalidParameter, "stiffness matrix must be square and nonempty");
  }
  impl_->llt.compute(A);
  if (impl_->llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kNotPositiveDefinite,
                "Cholesky factorization failed: stiffness matrix is not SPD");
  }
}

SpdFactor::~SpdFactor() = default;
SpdFactor::SpdFactor(SpdFactor&&) noexcept = default;
SpdFactor& SpdFactor::operator=(SpdFactor&&) noexcept = default;

int SpdFactor::size() const { return static_cast<int>(impl_->llt.rows()); }

Eigen::VectorXd SpdFactor::solve(const Eigen::VectorXd& b) const {
  return impl_->llt.solve(b);
}

Eigen::VectorXd SpdFactor::whiten(const Eigen::VectorXd& b) const {
  Eigen::VectorXd y = impl_->llt.permutationP() * b;
  impl_->llt.matrixL().solveInPlace(y);
  return y;
}

SpdFactor::SelectedInverse SpdFactor::selected_inverse() const {
  SparseMatrix L = impl_->llt.matrixL();
  L.makeCompressed();
  const int n = static_cast<int>(L.cols());

  SelectedInverse Z;
  Z.col_start_.assign(L.outerIndexPtr(), L.outerIndexPtr() + n + 1);
  Z.rows_.assign(L.innerIndexPtr(), L.innerIndexPtr() + L.nonZeros());
  std::vector<double> lvals(L.valuePtr(), L.valuePtr() + L.nonZeros());
  for (int j = 0; j < n; ++j) {
    const int b = Z.col_start_[j];
    const int e = Z.col_start_[j + 1];
    if (!std::is_sorted(Z.rows_.begin() + b, Z.rows_.begin() + e)) {
      std::vector<int> idx(e - b);
      std::iota(idx.begin(), idx.end(), b);
      std::sort(idx.begin(), idx.end(), [&](int p, int q) { return Z.rows_[p] < Z.rows_[q]; });
      std::vector<int> r;
      std::vector<double> v;
      for (int p : idx) {
        r.push_back(Z.rows_[p]);
        v.push_back(lvals[p]);
      }
      std::copy(r.begin(), r.end(), Z.rows_.begin() + b);
      std::copy(v.begin(), v.end(), lvals.begin() + b);
    }
    if (e == b || Z.rows_[b] != j) {
      throw Error(ErrorCode::kInternal, "Cholesky factor is missing a diagonal entry");
    }
  }

  Z.values_.assign(lvals.size(), 0.0);
  auto lookup = [&](int r, int c) -> double {
    if (r < c) std::swap(r, c);
    const auto first = Z.rows_.begin() + Z.col_start_[c];
    const auto last = Z.rows_.begin() + Z.col_start_[c + 1];
    const auto it = std::lower_bound(first, last, r);
    if (it == last || *it != r) {
      throw Error(ErrorCode::kInternal, "selected inverse entry outside the fill pattern");
    }
    return Z.values_[it - Z.rows_.begin()];
  };

  // Takahashi recurrence: Z L = L^{-T}, processed from the last column back.
  for (int j = n - 1; j >= 0; --j) {
    const int diag = Z.col_start_[j];
    const int end = Z.col_start_[j + 1];
    const double ljj = lvals[diag];
    for (int p = diag + 1; p < end; ++p) {
      double s = 0.0;
      for (int q = diag + 1; q < end; ++q) s += lvals[q] * lookup(Z.rows_[p], Z.rows_[q]);
      Z.values_[p] = -s / ljj;
    }
    double s = 0.0;
    for (int q = diag + 1; q < end; ++q) s += lvals[q] * Z.values_[q];
    Z.values_[diag] = (1.0 / ljj - s) / ljj;
  }

  const auto& indices = impl_->llt.permutationP().indices();
  Z.perm_.assign(indices.data(), indices.data() + indices.size());
  return Z;
}

double SpdFactor::SelectedInverse::operator()(int a, int b) const {
  int r = perm_[a];
  int c = perm_[b];
  if (r < c) std::swap(r, c);
  const auto first = rows_.begin() + col_start_[c];
  const auto last = rows_.begin() + col_start_[c + 1];
  const auto it = std::lower_bound(first, last, r);
  if (it == last || *it != r) {
    throw Error(ErrorCode::kInternal, "selected inverse entry outside the fill pattern");
  }
  return values_[it - rows_.begin()];
}

namespace {

Eigen::VectorXd dense_row(const SparseRowMatrix& B, int i) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(B.cols());
  for (SparseRowMatrix::InnerIterator it(B, i); it; ++it) b[it.col()] = it.value();
  return b;
}

RelaxedSolution finish(const SpdFactor& factor, const SparseRowMatrix& B,
                       Eigen::VectorXd diag) {
  RelaxedSolution sol;
  if (diag.size() == 0) {
    throw Error(ErrorCode::kInvalidParameter, "transform matrix has no rows");
  }
  Eigen::Index arg = 0;
  const double dmax = diag.maxCoeff(&arg);
  if (!(dmax > 0.0) || !std::isfinite(dmax)) {
    throw Error(ErrorCode::kInternal, "max diag(B A^-1 B^T) is not positive");
  }
  // maxCoeff returns the first maximal index; ties within rounding go to the lowest row.
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    if (dmax - diag[i] <= 1e-12 * dmax) sol.near_max_rows.push_back(static_cast<int>(i));
  }
  sol.argmax_row = sol.near_max_rows.front();
  sol.lambda_hB = 1.0 / dmax;
  const double d_star = diag[sol.argmax_row];
  sol.minimizer = factor.solve(dense_row(B, sol.argmax_row)) / d_star;
  sol.diag_D = std::move(diag);
  return sol;
}

}  // namespace

RelaxedSolution solve_relaxed(const SparseMatrix& A, const SparseRowMatrix& B,
                              const SolveOptions& options) {
  if (B.cols() != A.rows()) {
    throw Error(ErrorCode::kInvalidParameter, "B and A dimensions disagree");
  }
  const SpdFactor factor(A);
  const auto rows = static_cast<std::size_t>(B.rows());
  Eigen::VectorXd diag(B.rows());

  if (options.method == DiagonalMethod::kSelectedInverse) {
    const auto Z = factor.selected_inverse();
    parallel_for(rows, options.threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        double d = 0.0;
        for (SparseRowMatrix::InnerIterator a(B, static_cast<int>(i)); a; ++a) {
          for (SparseRowMatrix::InnerIterator b(B, static_cast<int>(i)); b; ++b) {
            d += a.value() * b.value() * Z(a.col(), b.col());
          }
        }
        diag[static_cast<Eigen::Index>(i)] = d;
      }
    });
  } else {
    parallel_for(rows, options.threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const Eigen::VectorXd b = dense_row(B, static_cast<int>(i));
        diag[static_cast<Eigen::Index>(i)] = b.dot(factor.solve(b));
      }
    });
  }
  return finish(factor, B, std::move(diag));
}

RelaxedSolution solve_relaxed_cholesky(const SparseMatrix& A, const SparseRowMatrix& B,
                                       int threads) {
  if (B.cols() != A.rows()) {
    throw Error(ErrorCode::kInvalidParameter, "B and A dimensions disagree");
  }
  const SpdFactor factor(A);
  Eigen::VectorXd diag(B.rows());
  parallel_for(static_cast<std::size_t>(B.rows()), threads,
               [&](std::size_t begin, std::size_t end) {
                 for (std::size_t i = begin; i < end; ++i) {
                   diag[static_cast<Eigen::Index>(i)] =
                       factor.whiten(dense_row(B, static_cast<int>(i))).squaredNorm();
                 }
               });
  return finish(factor, B, std::move(diag));
}

}  // namespace clbound
