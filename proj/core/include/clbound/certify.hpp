// Copyright The clbound Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "clbound/geometry.hpp"
#include "clbound/mesh.hpp"
#include "clbound/morley.hpp"

namespace clbound {

/// Degree-d polynomial in Bernstein-Bezier form over a triangle's
/// barycentric coordinates.
class BernsteinPoly {
 public:
  explicit BernsteinPoly(int degree);
  BernsteinPoly(int degree, std::vector<double> coefficients);

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(coeffs_.size()); }

  /// Multi-index of coefficient `index`; ordering is i descending, then j
  /// descending.
  const std::array<int, 3>& multi_index(int index) const { return indices_[index]; }
  int index_of(int i, int j) const { return lookup_[i * (degree_ + 1) + j]; }

  double& coefficient(int i, int j) { return coeffs_[index_of(i, j)]; }
  double coefficient(int i, int j) const { return coeffs_[index_of(i, j)]; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  std::vector<double>& coefficients() { return coeffs_; }

  /// de Casteljau evaluation.
  double evaluate(const Barycentric& b) const;

  /// Value of the Bernstein basis polynomial `index` at b.
  double basis(int index, const Barycentric& b) const;

  /// |f|_{2,K}^2 integrated exactly from barycentric monomials.
  double h2_seminorm_squared(const Triangle& tri) const;

  /// Gram matrix <D^2 J_p, D^2 J_q> of the degree-d Bernstein basis.
  static Eigen::MatrixXd h2_gram(int degree, const Triangle& tri);

 private:
  int degree_;
  std::vector<double> coeffs_;
  std::vector<std::array<int, 3>> indices_;
  std::vector<int> lookup_;
};

/// u_h at every mesh vertex, read off the element control nets.
std::vector<double> minimizer_nodal_values(const FMSpace& space, const Eigen::VectorXd& x);

struct FitResult {
  BernsteinPoly poly;
  double residual_norm = 0.0;
  bool rank_deficient = false;
};

/// Least-squares fit over P_d of the nodal values, with the three corner
/// values held at zero.
FitResult fit_polynomial(std::span<const double> nodal_values, const Mesh& mesh, int degree);

/// Polynomial of degree d, zero at the corners, maximizing f(x0) / |f|_{2,K}:
/// f = G^{-1} b(x0) with G the H2 Gram matrix and b the basis values at x0.
BernsteinPoly extremal_polynomial(const Triangle& tri, int degree, const Barycentric& x0);

struct ExtremalBound {
  double lower_bound = 0.0;  // sampled Rayleigh quotient of `poly`
  Barycentric peak;
  BernsteinPoly poly{0};
};

/// Scans x0 over a barycentric lattice with `grid` points per side and keeps
/// the best extremal polynomial.
ExtremalBound extremal_lower_bound(const Triangle& tri, int degree, int grid = 60,
                                   int samples_per_side = 200);

/// max |f - Pi^L f| over a barycentric lattice (plus the control net
/// positions) divided by the exact |f|_{2,K}. Never exceeds C^L(K).
double rayleigh_lower_bound(const BernsteinPoly& f, const Triangle& tri,
                            int samples_per_side = 200);

}  // namespace clbound
