// Copyright The clbound Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <span>

#include "clbound/geometry.hpp"
#include "clbound/linalg.hpp"

namespace clbound {

struct FMSpace;

/// Control-point order used everywhere: 200, 020, 002, 110, 101, 011.
inline constexpr std::array<std::array<int, 3>, 6> kQuadraticIndices = {{
    {2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}}};

/// Barycentric coordinate pair (a, b) with J_k = c * lambda_a * lambda_b.
inline constexpr std::array<std::array<int, 2>, 6> kQuadraticPairs = {{
    {0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}}};

struct BernsteinQuadratic {
  std::array<double, 6> d{};

  double evaluate(const Barycentric& b) const;
};

/// Symmetric 2x2 Hessian (xx, xy, yy).
struct Hessian2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;
};

std::array<double, 6> quadratic_basis(const Barycentric& b);
std::array<Point2, 6> quadratic_basis_gradients(const Triangle& tri, const Barycentric& b);
std::array<Hessian2, 6> quadratic_basis_hessians(const Triangle& tri);

/// Vertex values f1, f2, f3 and midpoint values m12, m13, m23.
BernsteinQuadratic p2_to_bernstein(const std::array<double, 3>& vertex_values,
                                   const std::array<double, 3>& midpoint_values);

/// max |d_ijk|, an upper bound of the sup-norm on the element.
double convex_hull_sup_bound(const BernsteinQuadratic& q);

/// Degree elevation 2 -> 3. Output is indexed by (i, j, k) with i + j + k = 3
/// in the order 300, 030, 003, 210, 201, 120, 021, 102, 012, 111.
std::array<double, 10> elevate_to_cubic(const BernsteinQuadratic& q);

/// Maps Fujino-Morley coefficients to stacked per-element control points
/// (6 rows per element, row 6e + k is control point k of element e).
SparseRowMatrix assemble_B(const FMSpace& space);

}  // namespace clbound
