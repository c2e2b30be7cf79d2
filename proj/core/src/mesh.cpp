// Copyright The clbound Authors.
// SPDX-License-Identifier: Apache-2.0

#include "clbound/mesh.hpp"

#include <map>
#include <ostream>
#include <utility>

#include "clbound/error.hpp"

namespace clbound {

namespace {

void check_subdivisions(int n) {
  if (n < 1) {
    throw Error(ErrorCode::kInvalidParameter, "subdivision count must be at least 1");
  }
}

}  // namespace

Mesh::Mesh(const Triangle& parent, int subdivisions)
    : parent_((check_subdivisions(subdivisions), parent)), n_(subdivisions) {
  const Point2 p1 = parent.vertex(0);
  const Point2 e1 = (1.0 / n_) * (parent.vertex(1) - p1);
  const Point2 e2 = (1.0 / n_) * (parent.vertex(2) - p1);

  vertices_.reserve(static_cast<std::size_t>(n_ + 1) * (n_ + 2) / 2);
  for (int j = 0; j <= n_; ++j) {
    for (int i = 0; i + j <= n_; ++i) {
      vertices_.push_back(p1 + static_cast<double>(i) * e1 + static_cast<double>(j) * e2);
    }
  }
  // Exact corners, so corner lookup by coordinates is reliable.
  vertices_[vertex_index(n_, 0)] = parent.vertex(1);
  vertices_[vertex_index(0, n_)] = parent.vertex(2);

  std::map<std::pair<int, int>, int> edge_ids;
  auto edge_of = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    auto [it, inserted] = edge_ids.try_emplace({key.first, key.second},
                                               static_cast<int>(edges_.size()));
    if (inserted) {
      const Point2 t = vertices_[key.second] - vertices_[key.first];
      const double len = norm(t);
      edges_.push_back({{key.first, key.second}, {t.y / len, -t.x / len}, 0});
    }
    ++edges_[it->second].element_count;
    return it->second;
  };

  auto add_element = [&](std::array<int, 3> v, Orientation o) {
    MeshElement el{v, {}, {}, o};
    for (int k = 0; k < 3; ++k) {
      const int a = v[(k + 1) % 3];
      const int b = v[(k + 2) % 3];
      el.edges[k] = edge_of(a, b);
      const Point2 t = vertices_[b] - vertices_[a];
      const Point2 outward{t.y, -t.x};
      el.edge_signs[k] = dot(outward, edges_[el.edges[k]].normal) > 0.0 ? 1 : -1;
    }
    elements_.push_back(el);
  };

  elements_.reserve(static_cast<std::size_t>(n_) * n_);
  for (int j = 0; j < n_; ++j) {
    for (int i = 0; i + j < n_; ++i) {
      add_element({vertex_index(i, j), vertex_index(i + 1, j), vertex_index(i, j + 1)},
                  Orientation::kUp);
      if (i + j + 1 < n_) {
        add_element({vertex_index(i + 1, j + 1), vertex_index(i, j + 1),
                     vertex_index(i + 1, j)},
                    Orientation::kDown);
      }
    }
  }
}

Triangle Mesh::element_geometry(int e) const {
  const auto& v = elements_[e].vertices;
  return Triangle::from_vertices(vertices_[v[0]], vertices_[v[1]], vertices_[v[2]]);
}

std::array<Point2, 3> Mesh::element_edge_normals(int e) const {
  const auto& el = elements_[e];
  return {edges_[el.edges[0]].normal, edges_[el.edges[1]].normal,
          edges_[el.edges[2]].normal};
}

std::array<int, 3> Mesh::corner_vertex_indices() const {
  return {vertex_index(0, 0), vertex_index(n_, 0), vertex_index(0, n_)};
}

Mesh uniform_mesh(const Triangle& tri, int subdivisions) { return Mesh(tri, subdivisions); }

std::array<int, 3> corner_vertex_indices(const Mesh& mesh) {
  return mesh.corner_vertex_indices();
}

void write_mesh_csv(const Mesh& mesh, std::ostream& vertices, std::ostream& elements) {
  const auto old_precision = vertices.precision(17);
  vertices << "index,x,y\n";
  for (std::size_t i = 0; i < mesh.vertices().size(); ++i) {
    vertices << i << ',' << mesh.vertices()[i].x << ',' << mesh.vertices()[i].y << '\n';
  }
  vertices.precision(old_precision);

  elements << "index,v0,v1,v2,orientation\n";
  for (std::size_t e = 0; e < mesh.elements().size(); ++e) {
    const auto& el = mesh.elements()[e];
    elements << e << ',' << el.vertices[0] << ',' << el.vertices[1] << ','
             << el.vertices[2] << ','
             << (el.orientation == Orientation::kUp ? "up" : "down") << '\n';
  }
}

}  // namespace clbound
