// Copyright The clbound Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>

namespace clbound {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point2, Point2) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }

/// Barycentric coordinates (u, v, w) with respect to (p1, p2, p3).
struct Barycentric {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;

  double operator[](int i) const { return i == 0 ? u : (i == 1 ? v : w); }
  bool inside(double tol = 1e-12) const {
    return u >= -tol && v >= -tol && w >= -tol;
  }
};

/// A nondegenerate triangle stored counterclockwise.
///
/// Edge i is the edge opposite vertex i, so edge 0 is p2p3, edge 1 is p1p3
/// and edge 2 is p1p2.
class Triangle {
 public:
  /// Throws kDegenerateGeometry for collinear vertices. Clockwise input is
  /// reordered by swapping p2 and p3.
  static Triangle from_vertices(Point2 p1, Point2 p2, Point2 p3);

  const Point2& vertex(int i) const { return p_[i]; }
  const std::array<Point2, 3>& vertices() const { return p_; }

  double area() const { return area_; }
  double edge_length(int i) const { return edge_[i]; }
  double longest_edge() const;
  double height(int edge) const { return 2.0 * area_ / edge_[edge]; }

  /// Gradients of the three barycentric coordinate functions (constant).
  const std::array<Point2, 3>& barycentric_gradients() const { return grad_; }

  Barycentric barycentric(Point2 x) const;
  Point2 to_cartesian(const Barycentric& b) const;

  Triangle scaled(double s) const;

  /// Set when make_triangle was called with theta < acos(alpha/2) or
  /// alpha > 1, i.e. outside the usual parametrization range.
  bool outside_canonical_range() const { return outside_canonical_range_; }

 private:
  friend Triangle make_triangle(double alpha, double theta, double h);
  Triangle() = default;

  std::array<Point2, 3> p_{};
  std::array<double, 3> edge_{};
  std::array<Point2, 3> grad_{};
  double area_ = 0.0;
  bool outside_canonical_range_ = false;
};

/// K_{alpha,theta,h}: p1=(0,0), p2=(h,0), p3=(alpha h cos theta, alpha h sin theta).
Triangle make_triangle(double alpha, double theta, double h = 1.0);

Barycentric barycentric(const Triangle& tri, Point2 x);

/// Exact value of the integral of u^a v^b w^c over the triangle.
double integrate_bary_monomial(const Triangle& tri, int a, int b, int c);

/// Distance from p3 to the line through p1 and x0.
double subtriangle_height(const Triangle& tri, Point2 x0);

}  // namespace clbound
