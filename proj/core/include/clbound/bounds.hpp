// Copyright The clbound Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "clbound/geometry.hpp"

namespace clbound {

/// C_1(1, pi/2) bound used in the raw right-isosceles estimate.
inline constexpr double kC1RightIsosceles = 0.49293;
/// Constant in the angle-based C_1 formula.
inline constexpr double kC1AngleBound = 0.493;
/// Published raw bound C^L(1, pi/2, h) <= 1.3712 h, used for C_h^FM.
inline constexpr double kRawClRightIsosceles = 1.3712;
/// Improved bound C^L(1, pi/2, h) <= 0.41595 h.
inline constexpr double kSharpClRightIsosceles = 0.41595;

/// Shape factor 1 + a^2 + sqrt(1 + 2 a^2 cos(2 t) + a^4).
double v_plus(double alpha, double theta);

double c1_angle_bound(double alpha, double theta);
double c1_kobayashi(const Triangle& tri);

/// Pointwise bound factor at x0:
/// sqrt(2 |p1 x0| / H) * (c1 h h_K + c1^2 h^2)^(1/2), h the medium edge length.
double raw_pointwise_bound(const Triangle& tri, Point2 x0, double c1);

/// sqrt(2) * (0.49293 sqrt(2) + 0.49293^2)^(1/2) = 1.37119...
double raw_cl_right_isosceles();

/// cl_ref * v_plus / (2 sqrt(alpha sin theta)).
double raw_cl_general(double alpha, double theta, double cl_ref);

/// lambda_h / (1 + c_fm^2 lambda_h).
double lambda_lower_thm31(double lambda_h, double c_fm);

/// Uniform bound of the Fujino-Morley residual constant on an N-mesh (h = 1).
double c_fm_uniform(double alpha, double theta, int subdivisions);

/// lambda_h (1 - 1/N^2).
double lambda_lower_cor31(double lambda_h, int subdivisions);

/// h / sqrt(lambda_lb).
double cl_upper_from_lambda(double lambda_lb, double h = 1.0);

/// Best of the explicit quotients for u = x^2 + y^2 and, at theta = pi/2,
/// u = |x - p4|^2 with p4 the midpoint of p2p3.
double degenerate_lower_bound(double alpha, double theta);

struct BoundReport {
  double alpha = 0.0;
  double theta = 0.0;
  double h = 1.0;
  int subdivisions = 0;

  double lambda_hB = 0.0;
  double lambda_lb_thm31 = 0.0;
  double lambda_lb_cor31 = 0.0;
  double c_fm_used = 0.0;
  double cl_upper = 0.0;
  std::optional<double> cl_lower;      // best of the certificates below
  std::optional<double> cl_lower_fit;  // polynomial fitted to the FM minimizer
  std::optional<double> cl_lower_extremal;  // H2-extremal polynomial of the same degree
  std::optional<int> fit_degree;
  double cl_upper_raw = 0.0;  // raw_cl_general with the 1.3712 reference, times h
  double degenerate_lower = 0.0;

  int argmax_row = -1;
  std::vector<int> near_max_rows;
  Eigen::VectorXd minimizer;
  std::vector<std::string> warnings;
};

}  // namespace clbound
