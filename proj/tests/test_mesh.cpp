// Copyright The clbound Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "clbound/error.hpp"
#include "clbound/geometry.hpp"
#include "clbound/mesh.hpp"

namespace clbound {
namespace {

constexpr double kPi = std::numbers::pi;

struct Counts {
  int n, vertices, edges, elements;
};

void PrintTo(const Counts& c, std::ostream* os) { *os << "N=" << c.n; }

class MeshCounts : public ::testing::TestWithParam<Counts> {};

TEST_P(MeshCounts, ClosedForm) {
  const Counts c = GetParam();
  const Mesh mesh = uniform_mesh(make_triangle(1.0, kPi / 2), c.n);
  EXPECT_EQ(static_cast<int>(mesh.vertices().size()), c.vertices);
  EXPECT_EQ(static_cast<int>(mesh.edges().size()), c.edges);
  EXPECT_EQ(static_cast<int>(mesh.elements().size()), c.elements);
  // Euler: V - E + F = 1 for a triangulated disc.
  EXPECT_EQ(c.vertices - c.edges + c.elements, 1);
}

INSTANTIATE_TEST_SUITE_P(Examples, MeshCounts,
                         ::testing::Values(Counts{1, 3, 3, 1}, Counts{2, 6, 9, 4},
                                           Counts{64, 2145, 6240, 4096}),
                         [](const auto& info) { return "N" + std::to_string(info.param.n); });

TEST(Mesh, ZeroSubdivisionsRejected) {
  EXPECT_THROW(uniform_mesh(make_triangle(1.0, kPi / 2), 0), Error);
}

TEST(Mesh, VertexPositionsAndNumbering) {
  const Triangle t = make_triangle(0.8, 1.3);
  const int n = 5;
  const Mesh mesh = uniform_mesh(t, n);
  int expected = 0;
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i + j <= n; ++i) {
      EXPECT_EQ(mesh.vertex_index(i, j), expected);
      const Point2 p = t.vertex(0) + (static_cast<double>(i) / n) * (t.vertex(1) - t.vertex(0)) +
                       (static_cast<double>(j) / n) * (t.vertex(2) - t.vertex(0));
      EXPECT_NEAR(mesh.vertices()[expected].x, p.x, 1e-14);
      EXPECT_NEAR(mesh.vertices()[expected].y, p.y, 1e-14);
      ++expected;
    }
  }
}

TEST(Mesh, CornerIndices) {
  for (int n : {1, 2, 7}) {
    const Triangle t = make_triangle(0.9, 1.9);
    const Mesh mesh = uniform_mesh(t, n);
    const auto corners = corner_vertex_indices(mesh);
    const std::set<int> distinct(corners.begin(), corners.end());
    EXPECT_EQ(distinct.size(), 3u);
    for (int k = 0; k < 3; ++k) {
      EXPECT_EQ(mesh.vertices()[corners[k]], t.vertex(k));
    }
    if (n == 1) {
      EXPECT_EQ(corners, (std::array<int, 3>{0, 1, 2}));
    }
  }
}

TEST(Mesh, AreasSumToParent) {
  for (int n : {1, 3, 8, 16}) {
    const Triangle t = make_triangle(0.6, 2.2);
    const Mesh mesh = uniform_mesh(t, n);
    double total = 0.0;
    for (std::size_t e = 0; e < mesh.elements().size(); ++e) {
      const double a = mesh.element_geometry(static_cast<int>(e)).area();
      EXPECT_NEAR(a, t.area() / (n * n), 1e-14);
      total += a;
    }
    EXPECT_NEAR(total, t.area(), 1e-12 * t.area());
  }
}

TEST(Mesh, ElementsAreSimilarOrReflected) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> alpha(0.3, 1.0), theta(0.3, 2.8);
  std::uniform_int_distribution<int> subdivisions(1, 8);
  for (int trial = 0; trial < 10; ++trial) {
    const Triangle t = make_triangle(alpha(rng), theta(rng));
    const int n = subdivisions(rng);
    const Mesh mesh = uniform_mesh(t, n);
    for (std::size_t e = 0; e < mesh.elements().size(); ++e) {
      const auto& el = mesh.elements()[e];
      const Point2 a = mesh.vertices()[el.vertices[0]];
      const Point2 b = mesh.vertices()[el.vertices[1]];
      const Point2 c = mesh.vertices()[el.vertices[2]];
      const double s = el.orientation == Orientation::kUp ? 1.0 : -1.0;
      const Point2 e1 = (s / n) * (t.vertex(1) - t.vertex(0));
      const Point2 e2 = (s / n) * (t.vertex(2) - t.vertex(0));
      EXPECT_NEAR((b - a).x, e1.x, 1e-13);
      EXPECT_NEAR((b - a).y, e1.y, 1e-13);
      EXPECT_NEAR((c - a).x, e2.x, 1e-13);
      EXPECT_NEAR((c - a).y, e2.y, 1e-13);
    }
  }
}

TEST(Mesh, EdgeSharing) {
  const int n = 6;
  const Mesh mesh = uniform_mesh(make_triangle(1.0, kPi / 3), n);
  std::vector<int> seen(mesh.edges().size(), 0);
  for (const auto& el : mesh.elements()) {
    for (int k = 0; k < 3; ++k) ++seen[el.edges[k]];
  }
  int boundary = 0;
  for (std::size_t i = 0; i < mesh.edges().size(); ++i) {
    EXPECT_EQ(seen[i], mesh.edges()[i].element_count);
    EXPECT_TRUE(seen[i] == 1 || seen[i] == 2);
    boundary += seen[i] == 1;
  }
  EXPECT_EQ(boundary, 3 * n);
}

TEST(Mesh, EdgeNormalConsistency) {
  const Mesh mesh = uniform_mesh(make_triangle(0.7, 1.7), 5);
  std::vector<std::vector<double>> outward(mesh.edges().size());
  for (std::size_t e = 0; e < mesh.elements().size(); ++e) {
    const auto& el = mesh.elements()[e];
    const Triangle geo = mesh.element_geometry(static_cast<int>(e));
    for (int k = 0; k < 3; ++k) {
      const MeshEdge& edge = mesh.edges()[el.edges[k]];
      EXPECT_NEAR(norm(edge.normal), 1.0, 1e-14);
      const Point2 p = mesh.vertices()[edge.vertices[0]];
      const Point2 q = mesh.vertices()[edge.vertices[1]];
      const Point2 t = q - p;
      EXPECT_NEAR(edge.normal.x, t.y / norm(t), 1e-14);
      EXPECT_NEAR(edge.normal.y, -t.x / norm(t), 1e-14);
      // Opposite vertex lies on the inner side of an outward normal.
      const Point2 opposite = geo.vertex(k);
      const double side = dot(opposite - p, edge.normal);
      EXPECT_EQ(side < 0 ? 1 : -1, el.edge_signs[k]);
      outward[el.edges[k]].push_back(el.edge_signs[k]);
    }
  }
  for (const auto& signs : outward) {
    if (signs.size() == 2) {
      EXPECT_EQ(signs[0] + signs[1], 0);
    }
  }
}

TEST(Mesh, ElementEdgesOppositeVertices) {
  const Mesh mesh = uniform_mesh(make_triangle(1.0, kPi / 2), 4);
  for (const auto& el : mesh.elements()) {
    for (int k = 0; k < 3; ++k) {
      const auto& ev = mesh.edges()[el.edges[k]].vertices;
      EXPECT_TRUE(std::find(ev.begin(), ev.end(), el.vertices[k]) == ev.end());
    }
  }
}

TEST(Mesh, CsvDump) {
  const Mesh mesh = uniform_mesh(make_triangle(1.0, kPi / 2), 2);
  std::ostringstream vertices, elements;
  write_mesh_csv(mesh, vertices, elements);
  const std::string v = vertices.str(), e = elements.str();
  EXPECT_EQ(std::count(v.begin(), v.end(), '\n'), 7);
  EXPECT_EQ(std::count(e.begin(), e.end(), '\n'), 5);
  EXPECT_EQ(v.substr(0, v.find('\n')), "index,x,y");
}

}  // namespace
}  // namespace clbound
