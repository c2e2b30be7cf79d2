// Copyright The clbound Authors.
// SPDX-License-Identifier: Apache-2.0

#include "clbound/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/SparseCore>

#include "clbound/morley.hpp"

namespace clbound {

namespace {

double pair_factor(int k) { return k < 3 ? 1.0 : 2.0; }

}  // namespace

std::array<double, 6> quadratic_basis(const Barycentric& b) {
  std::array<double, 6> out{};
  for (int k = 0; k < 6; ++k) {
    const auto [a, c] = kQuadraticPairs[k];
    out[k] = pair_factor(k) * b[a] * b[c];
  }
  return out;
}

std::array<Point2, 6> quadratic_basis_gradients(const Triangle& tri, const Barycentric& b) {
  const auto& g = tri.barycentric_gradients();
  std::array<Point2, 6> out{};
  for (int k = 0; k < 6; ++k) {
    const auto [a, c] = kQuadraticPairs[k];
    out[k] = pair_factor(k) * (b[a] * g[c] + b[c] * g[a]);
  }
  return out;
}

std::array<Hessian2, 6> quadratic_basis_hessians(const Triangle& tri) {
  const auto& g = tri.barycentric_gradients();
  std::array<Hessian2, 6> out{};
  for (int k = 0; k < 6; ++k) {
    const auto [a, c] = kQuadraticPairs[k];
    const double f = pair_factor(k);
    out[k] = {f * 2.0 * g[a].x * g[c].x, f * (g[a].x * g[c].y + g[c].x * g[a].y),
              f * 2.0 * g[a].y * g[c].y};
  }
  return out;
}

double BernsteinQuadratic::evaluate(const Barycentric& b) const {
  const auto basis = quadratic_basis(b);
  double s = 0.0;
  for (int k = 0; k < 6; ++k) s += d[k] * basis[k];
  return s;
}

BernsteinQuadratic p2_to_bernstein(const std::array<double, 3>& f,
                                   const std::array<double, 3>& m) {
  return {{f[0], f[1], f[2], 2.0 * m[0] - 0.5 * (f[0] + f[1]),
           2.0 * m[1] - 0.5 * (f[0] + f[2]), 2.0 * m[2] - 0.5 * (f[1] + f[2])}};
}

double convex_hull_sup_bound(const BernsteinQuadratic& q) {
  double m = 0.0;
  for (double v : q.d) m = std::max(m, std::abs(v));
  return m;
}

std::array<double, 10> elevate_to_cubic(const BernsteinQuadratic& q) {
  static constexpr std::array<std::array<int, 3>, 10> kCubic = {{
      {3, 0, 0}, {0, 3, 0}, {0, 0, 3}, {2, 1, 0}, {2, 0, 1},
      {1, 2, 0}, {0, 2, 1}, {1, 0, 2}, {0, 1, 2}, {1, 1, 1}}};
  auto quad_index = [](std::array<int, 3> idx) {
    for (int k = 0; k < 6; ++k) {
      if (kQuadraticIndices[k] == idx) return k;
    }
    return -1;
  };
  std::array<double, 10> out{};
  for (int c = 0; c < 10; ++c) {
    for (int m = 0; m < 3; ++m) {
      if (kCubic[c][m] == 0) continue;
      auto lower = kCubic[c];
      --lower[m];
      out[c] += kCubic[c][m] / 3.0 * q.d[quad_index(lower)];
    }
  }
  return out;
}

SparseRowMatrix assemble_B(const FMSpace& space) {
  const auto& elements = space.mesh.elements();
  std::vector<Eigen::Triplet<double, int>> triplets;
  triplets.reserve(elements.size() * 36);
  for (std::size_t e = 0; e < elements.size(); ++e) {
    const auto dofs = space.dofs.element_dofs(elements[e]);
    const Matrix6& basis = space.local_bases[e];
    for (int j = 0; j < 6; ++j) {
      if (dofs[j] < 0) continue;
      for (int k = 0; k < 6; ++k) {
        if (basis(k, j) != 0.0) {
          triplets.emplace_back(static_cast<int>(6 * e + k), dofs[j], basis(k, j));
        }
      }
    }
  }
  SparseRowMatrix B(static_cast<int>(6 * elements.size()), space.dofs.size);
  B.setFromTriplets(triplets.begin(), triplets.end());
  return B;
}

}  // namespace clbound
