// Copyright The clbound Authors.
// SPDX-License-Identifier: Apache-2.0

#include "clbound/morley.hpp"

#include <cmath>
#include <numeric>

#include <Eigen/LU>

#include "clbound/bernstein.hpp"
#include "clbound/error.hpp"

namespace clbound {

FMDofMap FMDofMap::build(const Mesh& mesh) {
  FMDofMap map;
  map.vertex_dof.assign(mesh.vertices().size(), 0);
  for (int c : mesh.corner_vertex_indices()) map.vertex_dof[c] = -1;
  int next = 0;
  for (int& d : map.vertex_dof) {
    if (d == 0) d = next++;
  }
  map.edge_dof.resize(mesh.edges().size());
  std::iota(map.edge_dof.begin(), map.edge_dof.end(), next);
  map.size = next + static_cast<int>(mesh.edges().size());
  return map;
}

std::array<int, 6> FMDofMap::element_dofs(const MeshElement& el) const {
  return {vertex_dof[el.vertices[0]], vertex_dof[el.vertices[1]],
          vertex_dof[el.vertices[2]], edge_dof[el.edges[0]],
          edge_dof[el.edges[1]],      edge_dof[el.edges[2]]};
}

Matrix6 fm_functional_matrix(const Triangle& tri, const std::array<Point2, 3>& edge_normals) {
  Matrix6 F = Matrix6::Zero();
  for (int i = 0; i < 3; ++i) F(i, i) = 1.0;

  // Two-point Gauss on each edge; exact because normal derivatives of P2 are linear.
  const double offset = 0.5 / std::sqrt(3.0);
  for (int e = 0; e < 3; ++e) {
    const int a = (e + 1) % 3;
    const int b = (e + 2) % 3;
    for (double t : {0.5 - offset, 0.5 + offset}) {
      double lambda[3] = {0.0, 0.0, 0.0};
      lambda[a] = 1.0 - t;
      lambda[b] = t;
      const auto grads = quadratic_basis_gradients(tri, {lambda[0], lambda[1], lambda[2]});
      for (int k = 0; k < 6; ++k) F(3 + e, k) += 0.5 * dot(grads[k], edge_normals[e]);
    }
  }
  return F;
}

Matrix6 local_basis(const Triangle& tri, const std::array<Point2, 3>& edge_normals) {
  const Eigen::FullPivLU<Matrix6> lu(fm_functional_matrix(tri, edge_normals));
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::kInternal, "Fujino-Morley functional matrix is singular");
  }
  return lu.inverse();
}

Matrix6 bernstein_h2_gram(const Triangle& tri) {
  const auto H = quadratic_basis_hessians(tri);
  Matrix6 G;
  for (int k = 0; k < 6; ++k) {
    for (int l = 0; l < 6; ++l) {
      G(k, l) = tri.area() * (H[k].xx * H[l].xx + 2.0 * H[k].xy * H[l].xy + H[k].yy * H[l].yy);
    }
  }
  return G;
}

Matrix6 local_h2_stiffness(const Triangle& tri, const std::array<Point2, 3>& edge_normals) {
  const Matrix6 C = local_basis(tri, edge_normals);
  return C.transpose() * bernstein_h2_gram(tri) * C;
}

FMSpace build_fm_space(const Triangle& tri, int subdivisions) {
  FMSpace space{Mesh(tri, subdivisions), {}, {}};
  space.dofs = FMDofMap::build(space.mesh);
  const int n_elements = static_cast<int>(space.mesh.elements().size());
  space.local_bases.reserve(n_elements);
  for (int e = 0; e < n_elements; ++e) {
    space.local_bases.push_back(
        local_basis(space.mesh.element_geometry(e), space.mesh.element_edge_normals(e)));
  }
  return space;
}

SparseMatrix assemble_A(const FMSpace& space, std::span<const int> element_order) {
  const auto& elements = space.mesh.elements();
  std::vector<int> order(element_order.begin(), element_order.end());
  if (order.empty()) {
    order.resize(elements.size());
    std::iota(order.begin(), order.end(), 0);
  }

  std::vector<Eigen::Triplet<double, int>> triplets;
  triplets.reserve(elements.size() * 36);
  for (int e : order) {
    const Triangle geom = space.mesh.element_geometry(e);
    const Matrix6& C = space.local_bases[e];
    const Matrix6 K = C.transpose() * bernstein_h2_gram(geom) * C;
    const auto dofs = space.dofs.element_dofs(elements[e]);
    for (int i = 0; i < 6; ++i) {
      if (dofs[i] < 0) continue;
      for (int j = 0; j < 6; ++j) {
        if (dofs[j] >= 0) triplets.emplace_back(dofs[i], dofs[j], K(i, j));
      }
    }
  }
  SparseMatrix A(space.dofs.size, space.dofs.size);
  A.setFromTriplets(triplets.begin(), triplets.end());
  return A;
}

Eigen::VectorXd fm_interpolate(const FMSpace& space, const SmoothFunction& u) {
  // 5-point Gauss-Legendre on [0, 1].
  static constexpr double kNodes[5] = {
      0.046910077030668004, 0.23076534494715845, 0.5, 0.76923465505284155,
      0.95308992296933200};
  static constexpr double kWeights[5] = {
      0.11846344252809454, 0.23931433524968324, 0.28444444444444444,
      0.23931433524968324, 0.11846344252809454};

  const Mesh& mesh = space.mesh;
  Eigen::VectorXd x(space.dofs.size);
  for (std::size_t v = 0; v < mesh.vertices().size(); ++v) {
    if (space.dofs.vertex_dof[v] >= 0) x[space.dofs.vertex_dof[v]] = u.value(mesh.vertices()[v]);
  }
  for (std::size_t e = 0; e < mesh.edges().size(); ++e) {
    const MeshEdge& edge = mesh.edges()[e];
    const Point2 a = mesh.vertices()[edge.vertices[0]];
    const Point2 b = mesh.vertices()[edge.vertices[1]];
    double mean = 0.0;
    for (int q = 0; q < 5; ++q) {
      mean += kWeights[q] * dot(u.gradient(a + kNodes[q] * (b - a)), edge.normal);
    }
    x[space.dofs.edge_dof[e]] = mean;
  }
  return x;
}

LinearFunction lagrange_interpolate(const Triangle& tri,
                                    const std::function<double(Point2)>& u) {
  const auto& g = tri.barycentric_gradients();
  LinearFunction f;
  double values[3];
  for (int i = 0; i < 3; ++i) {
    values[i] = u(tri.vertex(i));
    f.cx += values[i] * g[i].x;
    f.cy += values[i] * g[i].y;
  }
  f.c0 = values[0] - f.cx * tri.vertex(0).x - f.cy * tri.vertex(0).y;
  return f;
}

}  // namespace clbound
