// Copyright The clbound Authors.
// SPDX-License-Identifier: Apache-2.0

#include "clbound/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "clbound/error.hpp"

namespace clbound {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidParameter: return "invalid-parameter";
    case ErrorCode::kDegenerateGeometry: return "degenerate-geometry";
    case ErrorCode::kNotPositiveDefinite: return "not-spd";
    case ErrorCode::kInsufficientData: return "insufficient-data";
    case ErrorCode::kVacuousBound: return "vacuous-bound";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

Triangle Triangle::from_vertices(Point2 p1, Point2 p2, Point2 p3) {
  double twice_area = cross(p2 - p1, p3 - p1);
  if (twice_area < 0.0) {
    std::swap(p2, p3);
    twice_area = -twice_area;
  }
  const double scale = std::max({norm(p2 - p1), norm(p3 - p1), norm(p3 - p2)});
  if (!(scale > 0.0) || !(twice_area > 1e-14 * scale * scale)) {
    throw Error(ErrorCode::kDegenerateGeometry, "triangle vertices are collinear");
  }

  Triangle t;
  t.p_ = {p1, p2, p3};
  t.area_ = 0.5 * twice_area;
  for (int i = 0; i < 3; ++i) {
    const Point2& a = t.p_[(i + 1) % 3];
    const Point2& b = t.p_[(i + 2) % 3];
    const Point2 e = b - a;
    t.edge_[i] = norm(e);
    t.grad_[i] = {-e.y / twice_area, e.x / twice_area};
  }
  return t;
}

double Triangle::longest_edge() const {
  return std::max({edge_[0], edge_[1], edge_[2]});
}

Barycentric Triangle::barycentric(Point2 x) const {
  const double twice_area = 2.0 * area_;
  const double u = cross(p_[2] - p_[1], x - p_[1]) / twice_area;
  const double v = cross(p_[0] - p_[2], x - p_[2]) / twice_area;
  return {u, v, 1.0 - u - v};
}

Point2 Triangle::to_cartesian(const Barycentric& b) const {
  return {b.u * p_[0].x + b.v * p_[1].x + b.w * p_[2].x,
          b.u * p_[0].y + b.v * p_[1].y + b.w * p_[2].y};
}

Triangle Triangle::scaled(double s) const {
  Triangle t = from_vertices(s * p_[0], s * p_[1], s * p_[2]);
  t.outside_canonical_range_ = outside_canonical_range_;
  return t;
}

Triangle make_triangle(double alpha, double theta, double h) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kInvalidParameter, "alpha must be positive");
  }
  if (!(theta > 0.0 && theta < std::numbers::pi)) {
    throw Error(ErrorCode::kInvalidParameter, "theta must lie in (0, pi)");
  }
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw Error(ErrorCode::kInvalidParameter, "h must be positive");
  }
  Triangle t = Triangle::from_vertices(
      {0.0, 0.0}, {h, 0.0}, {alpha * h * std::cos(theta), alpha * h * std::sin(theta)});
  t.outside_canonical_range_ = alpha > 1.0 || theta < std::acos(alpha / 2.0) - 1e-14;
  return t;
}

Barycentric barycentric(const Triangle& tri, Point2 x) { return tri.barycentric(x); }

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

double integrate_bary_monomial(const Triangle& tri, int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0) {
    throw Error(ErrorCode::kInvalidParameter, "monomial exponents must be nonnegative");
  }
  return 2.0 * tri.area() * factorial(a) * factorial(b) * factorial(c) /
         factorial(a + b + c + 2);
}

double subtriangle_height(const Triangle& tri, Point2 x0) {
  const Point2 base = x0 - tri.vertex(0);
  const double len = norm(base);
  if (!(len > 1e-14 * tri.longest_edge())) {
    throw Error(ErrorCode::kDegenerateGeometry, "x0 coincides with p1");
  }
  return std::abs(cross(base, tri.vertex(2) - tri.vertex(0))) / len;
}

}  // namespace clbound
