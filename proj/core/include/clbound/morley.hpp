// Copyright The clbound Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "clbound/geometry.hpp"
#include "clbound/linalg.hpp"
#include "clbound/mesh.hpp"

namespace clbound {

/// Degree-of-freedom numbering of the Fujino-Morley space with the three
/// parent corners pinned to zero. Non-corner vertices come first, then edges.
struct FMDofMap {
  std::vector<int> vertex_dof;  // -1 at the parent corners
  std::vector<int> edge_dof;
  int size = 0;

  static FMDofMap build(const Mesh& mesh);

  /// Local order: vertex 0..2, then edge 0..2 (edge k opposite vertex k).
  std::array<int, 6> element_dofs(const MeshElement& el) const;
};

/// Rows: the six functionals (vertex values, then mean normal derivatives
/// along `edge_normals`). Columns: the quadratic Bernstein basis.
Matrix6 fm_functional_matrix(const Triangle& tri, const std::array<Point2, 3>& edge_normals);

/// Column j holds the control points of the basis function dual to
/// functional j.
Matrix6 local_basis(const Triangle& tri, const std::array<Point2, 3>& edge_normals);

/// Gram matrix of the Bernstein basis in the H2-seminorm inner product.
Matrix6 bernstein_h2_gram(const Triangle& tri);

/// Element H2-seminorm stiffness in the local Fujino-Morley basis.
Matrix6 local_h2_stiffness(const Triangle& tri, const std::array<Point2, 3>& edge_normals);

struct FMSpace {
  Mesh mesh;
  FMDofMap dofs;
  std::vector<Matrix6> local_bases;  // one per element
};

FMSpace build_fm_space(const Triangle& tri, int subdivisions);

/// Global stiffness a_ij = <phi_i, phi_j>_h. `element_order`, if non-empty,
/// gives the order in which element contributions are summed.
SparseMatrix assemble_A(const FMSpace& space, std::span<const int> element_order = {});

/// A twice differentiable function given by its value and gradient.
struct SmoothFunction {
  std::function<double(Point2)> value;
  std::function<Point2(Point2)> gradient;
};

/// Vertex values and edge means of the normal derivative (5-point Gauss).
Eigen::VectorXd fm_interpolate(const FMSpace& space, const SmoothFunction& u);

/// c0 + cx * x + cy * y.
struct LinearFunction {
  double c0 = 0.0;
  double cx = 0.0;
  double cy = 0.0;

  double operator()(Point2 p) const { return c0 + cx * p.x + cy * p.y; }
};

LinearFunction lagrange_interpolate(const Triangle& tri,
                                    const std::function<double(Point2)>& u);

}  // namespace clbound
