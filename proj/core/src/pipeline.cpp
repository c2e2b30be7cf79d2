// Copyright The clbound Authors.
// SPDX-License-Identifier: Apache-2.0

#include "clbound/pipeline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "clbound/bernstein.hpp"
#include "clbound/certify.hpp"
#include "clbound/error.hpp"
#include "clbound/geometry.hpp"

namespace clbound {

FMSystem build_fm_system(const Triangle& tri, int subdivisions) {
  FMSystem sys{build_fm_space(tri, subdivisions), {}, {}};
  sys.A = assemble_A(sys.space);
  sys.B = assemble_B(sys.space);
  return sys;
}

int default_fit_degree(double theta) {
  constexpr double pi = std::numbers::pi;
  static constexpr std::array<std::pair<double, int>, 7> kDegrees = {{
      {pi / 6, 9}, {pi / 4, 8}, {pi / 3, 10}, {pi / 2, 9},
      {2 * pi / 3, 8}, {3 * pi / 4, 10}, {5 * pi / 6, 8}}};
  for (const auto& [t, d] : kDegrees) {
    if (std::abs(theta - t) < 1e-9) return d;
  }
  return 9;
}

BoundReport compute_bounds(double alpha, double theta, double h,
                           const PipelineOptions& options) {
  const Triangle tri = make_triangle(alpha, theta, 1.0);
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw Error(ErrorCode::kInvalidParameter, "h must be positive");
  }

  BoundReport report;
  report.alpha = alpha;
  report.theta = theta;
  report.h = h;
  report.subdivisions = options.subdivisions;
  if (tri.outside_canonical_range()) {
    report.warnings.push_back("shape outside the canonical range acos(alpha/2) <= theta, alpha <= 1");
  }
  report.warnings.push_back("double-precision result, not interval-verified");

  const FMSystem sys = build_fm_system(tri, options.subdivisions);
  const RelaxedSolution sol =
      solve_relaxed(sys.A, sys.B, {options.method, options.threads});

  report.lambda_hB = sol.lambda_hB;
  report.c_fm_used = c_fm_uniform(alpha, theta, options.subdivisions);
  report.lambda_lb_thm31 = lambda_lower_thm31(sol.lambda_hB, report.c_fm_used);
  report.lambda_lb_cor31 = lambda_lower_cor31(sol.lambda_hB, options.subdivisions);
  const double lambda_lb = std::max(report.lambda_lb_thm31, report.lambda_lb_cor31);
  report.cl_upper = cl_upper_from_lambda(lambda_lb, h);
  report.cl_upper_raw = raw_cl_general(alpha, theta, kRawClRightIsosceles) * h;
  report.degenerate_lower = degenerate_lower_bound(alpha, theta) * h;
  report.argmax_row = sol.argmax_row;
  report.near_max_rows = sol.near_max_rows;
  report.minimizer = sol.minimizer;

  if (options.fit_degree) {
    const int degree = *options.fit_degree;
    report.fit_degree = degree;
    const bool fit_possible = options.subdivisions >= degree;
    if (options.lower_method == LowerBoundMethod::kBest && !fit_possible) {
      report.warnings.push_back("fitted certificate skipped: fewer subdivisions than the degree");
    }
    if (options.lower_method == LowerBoundMethod::kFit ||
        (options.lower_method == LowerBoundMethod::kBest && fit_possible)) {
      const auto nodal = minimizer_nodal_values(sys.space, sol.minimizer);
      const FitResult fit = fit_polynomial(nodal, sys.space.mesh, degree);
      if (fit.rank_deficient) report.warnings.push_back("polynomial fit is rank deficient");
      report.cl_lower_fit = rayleigh_lower_bound(fit.poly, tri, options.samples_per_side) * h;
    }
    if (options.lower_method != LowerBoundMethod::kFit) {
      report.cl_lower_extremal =
          extremal_lower_bound(tri, degree, 60, options.samples_per_side).lower_bound * h;
    }
    report.cl_lower = std::max(report.cl_lower_fit.value_or(0.0),
                               report.cl_lower_extremal.value_or(0.0));
    if (*report.cl_lower > report.cl_upper) {
      report.warnings.push_back("lower bound exceeds upper bound");
    }
  }
  return report;
}

}  // namespace clbound
