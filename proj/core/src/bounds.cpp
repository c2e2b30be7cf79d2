// Copyright The clbound Authors.
// SPDX-License-Identifier: Apache-2.0

#include "clbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "clbound/error.hpp"

namespace clbound {

namespace {

void check_shape(double alpha, double theta) {
  if (!(alpha > 0.0) || !(theta > 0.0 && theta < std::numbers::pi)) {
    throw Error(ErrorCode::kInvalidParameter, "shape requires alpha > 0 and theta in (0, pi)");
  }
}

double shape_radical(double alpha, double theta) {
  const double a2 = alpha * alpha;
  return std::sqrt(std::max(0.0, 1.0 + 2.0 * a2 * std::cos(2.0 * theta) + a2 * a2));
}

}  // namespace

double v_plus(double alpha, double theta) {
  return 1.0 + alpha * alpha + shape_radical(alpha, theta);
}

double c1_angle_bound(double alpha, double theta) {
  check_shape(alpha, theta);
  const double a2 = alpha * alpha;
  const double root = shape_radical(alpha, theta);
  const double radicand = 2.0 * (1.0 + a2 - root);
  if (!(radicand > 1e-14)) {
    throw Error(ErrorCode::kDegenerateGeometry, "angle-bound denominator vanishes");
  }
  return kC1AngleBound * (1.0 + a2 + root) / std::sqrt(radicand);
}

double c1_kobayashi(const Triangle& tri) {
  const double A2 = std::pow(tri.edge_length(0), 2);
  const double B2 = std::pow(tri.edge_length(1), 2);
  const double C2 = std::pow(tri.edge_length(2), 2);
  const double S = tri.area();
  const double radicand = A2 * B2 * C2 / (16.0 * S * S) - (A2 + B2 + C2) / 30.0 -
                          S * S / 5.0 * (1.0 / A2 + 1.0 / B2 + 1.0 / C2);
  if (radicand < 0.0) {
    throw Error(ErrorCode::kInternal, "negative radicand in Kobayashi constant");
  }
  return std::sqrt(radicand);
}

double raw_pointwise_bound(const Triangle& tri, Point2 x0, double c1) {
  const double base = norm(x0 - tri.vertex(0));
  if (base == 0.0) return 0.0;
  const double height = subtriangle_height(tri, x0);
  if (!(height > 1e-14 * tri.longest_edge())) {
    throw Error(ErrorCode::kDegenerateGeometry, "x0 lies on segment p1p3");
  }
  std::array<double, 3> edges{tri.edge_length(0), tri.edge_length(1), tri.edge_length(2)};
  std::sort(edges.begin(), edges.end());
  const double medium = edges[1];
  const double longest = edges[2];
  return std::sqrt(2.0 * base / height) *
         std::sqrt(c1 * medium * longest + c1 * c1 * medium * medium);
}

double raw_cl_right_isosceles() {
  const double c1 = kC1RightIsosceles;
  return std::sqrt(2.0) * std::sqrt(c1 * std::sqrt(2.0) + c1 * c1);
}

double raw_cl_general(double alpha, double theta, double cl_ref) {
  check_shape(alpha, theta);
  const double s = alpha * std::sin(theta);
  if (!(s > 0.0)) throw Error(ErrorCode::kDegenerateGeometry, "alpha sin(theta) <= 0");
  return cl_ref * v_plus(alpha, theta) / (2.0 * std::sqrt(s));
}

double lambda_lower_thm31(double lambda_h, double c_fm) {
  if (!(lambda_h > 0.0) || c_fm < 0.0) {
    throw Error(ErrorCode::kInvalidParameter, "need lambda_h > 0 and c_fm >= 0");
  }
  return lambda_h / (1.0 + c_fm * c_fm * lambda_h);
}

double c_fm_uniform(double alpha, double theta, int subdivisions) {
  if (subdivisions < 1) {
    throw Error(ErrorCode::kInvalidParameter, "subdivision count must be at least 1");
  }
  return raw_cl_general(alpha, theta, kRawClRightIsosceles) / subdivisions;
}

double lambda_lower_cor31(double lambda_h, int subdivisions) {
  if (subdivisions < 1) {
    throw Error(ErrorCode::kInvalidParameter, "subdivision count must be at least 1");
  }
  const double inv = 1.0 / subdivisions;
  return lambda_h * (1.0 - inv * inv);
}

double cl_upper_from_lambda(double lambda_lb, double h) {
  if (!(lambda_lb > 0.0)) {
    throw Error(ErrorCode::kVacuousBound, "lambda lower bound is not positive");
  }
  return h / std::sqrt(lambda_lb);
}

double degenerate_lower_bound(double alpha, double theta) {
  check_shape(alpha, theta);
  const double s = alpha * std::sin(theta);
  if (!(s > 0.0)) throw Error(ErrorCode::kDegenerateGeometry, "alpha sin(theta) <= 0");
  // |u - Pi^L u| at the midpoint of p2p3 is |p2p3|^2 / 4 and |u|_2 = 2 sqrt(alpha sin theta).
  double best = (1.0 + alpha * alpha - 2.0 * alpha * std::cos(theta)) / (8.0 * std::sqrt(s));
  if (std::abs(theta - std::numbers::pi / 2) < 1e-12) {
    best = std::max(best, (alpha * alpha + 1.0) / (8.0 * std::sqrt(alpha)));
  }
  return best;
}

}  // namespace clbound
