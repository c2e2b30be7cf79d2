// Copyright The clbound Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "clbound/geometry.hpp"

namespace clbound {

enum class Orientation { kUp, kDown };

struct MeshEdge {
  std::array<int, 2> vertices;  // ascending vertex indices
  Point2 normal;                // unit, (hi - lo) rotated by -90 degrees
  int element_count = 0;        // 1 on the boundary, 2 inside
};

struct MeshElement {
  std::array<int, 3> vertices;    // counterclockwise
  std::array<int, 3> edges;       // edges[k] is opposite vertices[k]
  std::array<int, 3> edge_signs;  // +1 if the global normal points outward
  Orientation orientation;
};

/// Uniform triangulation of a triangle into N^2 similar elements.
///
/// Vertex (i, j), i + j <= N, sits at p1 + (i/N)(p2 - p1) + (j/N)(p3 - p1) and
/// is numbered lexicographically with j outer, i inner. Up elements are
/// translates of the parent scaled by 1/N, down elements their point
/// reflections.
class Mesh {
 public:
  Mesh(const Triangle& parent, int subdivisions);

  const Triangle& parent() const { return parent_; }
  int subdivisions() const { return n_; }

  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<MeshEdge>& edges() const { return edges_; }
  const std::vector<MeshElement>& elements() const { return elements_; }

  int vertex_index(int i, int j) const { return j * (n_ + 1) - j * (j - 1) / 2 + i; }

  Triangle element_geometry(int e) const;

  /// Global normals of the element's edges, ordered like MeshElement::edges.
  std::array<Point2, 3> element_edge_normals(int e) const;

  /// Indices of the vertices at p1, p2, p3.
  std::array<int, 3> corner_vertex_indices() const;

 private:
  Triangle parent_;
  int n_;
  std::vector<Point2> vertices_;
  std::vector<MeshEdge> edges_;
  std::vector<MeshElement> elements_;
};

Mesh uniform_mesh(const Triangle& tri, int subdivisions);

std::array<int, 3> corner_vertex_indices(const Mesh& mesh);

/// Debug dump: "index,x,y" rows and "index,v0,v1,v2,orientation" rows.
void write_mesh_csv(const Mesh& mesh, std::ostream& vertices, std::ostream& elements);

}  // namespace clbound
