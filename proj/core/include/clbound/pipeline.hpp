// Copyright The clbound Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "clbound/bounds.hpp"
#include "clbound/linalg.hpp"
#include "clbound/morley.hpp"
#include "clbound/optimize.hpp"

namespace clbound {

enum class LowerBoundMethod {
  kFit,       // least-squares fit to the FM minimizer
  kExtremal,  // f = G^{-1} b(x0), best x0 on a lattice
  kBest,      // larger of the two
};

struct PipelineOptions {
  int subdivisions = 32;
  /// Degree of the lower-bound polynomial; no lower bound when empty.
  std::optional<int> fit_degree;
  int samples_per_side = 200;
  LowerBoundMethod lower_method = LowerBoundMethod::kBest;
  int threads = 1;
  DiagonalMethod method = DiagonalMethod::kSelectedInverse;
};

/// Assembled Fujino-Morley system on a triangle.
struct FMSystem {
  FMSpace space;
  SparseMatrix A;
  SparseRowMatrix B;
};

FMSystem build_fm_system(const Triangle& tri, int subdivisions);

/// Full two-sided bound computation for K_{alpha,theta,h}. The discrete
/// problem is always solved at h = 1 and the C^L bounds are scaled by h.
BoundReport compute_bounds(double alpha, double theta, double h,
                           const PipelineOptions& options);

/// Fit degree used when none is given, keyed by theta.
int default_fit_degree(double theta);

}  // namespace clbound
