// Copyright The clbound Authors.
// SPDX-License-Identifier: Apache-2.0

#include "clbound/certify.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "clbound/error.hpp"

namespace clbound {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double multinomial(const std::array<int, 3>& I) {
  return factorial(I[0] + I[1] + I[2]) / (factorial(I[0]) * factorial(I[1]) * factorial(I[2]));
}

}  // namespace

BernsteinPoly::BernsteinPoly(int degree) : degree_(degree) {
  if (degree < 0) throw Error(ErrorCode::kInvalidParameter, "degree must be nonnegative");
  lookup_.assign(static_cast<std::size_t>(degree + 1) * (degree + 1), -1);
  for (int i = degree; i >= 0; --i) {
    for (int j = degree - i; j >= 0; --j) {
      lookup_[i * (degree + 1) + j] = static_cast<int>(indices_.size());
      indices_.push_back({i, j, degree - i - j});
    }
  }
  coeffs_.assign(indices_.size(), 0.0);
}

BernsteinPoly::BernsteinPoly(int degree, std::vector<double> coefficients)
    : BernsteinPoly(degree) {
  if (coefficients.size() != coeffs_.size()) {
    throw Error(ErrorCode::kInvalidParameter, "coefficient count does not match degree");
  }
  coeffs_ = std::move(coefficients);
}

double BernsteinPoly::evaluate(const Barycentric& b) const {
  // grid[i][j] holds the level-r control point (i, j, r - i - j).
  const int stride = degree_ + 1;
  std::vector<double> grid(static_cast<std::size_t>(stride) * stride, 0.0);
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    grid[indices_[k][0] * stride + indices_[k][1]] = coeffs_[k];
  }
  for (int r = degree_; r > 0; --r) {
    for (int i = 0; i < r; ++i) {
      for (int j = 0; i + j < r; ++j) {
        double& g = grid[i * stride + j];
        g = b.u * grid[(i + 1) * stride + j] + b.v * grid[i * stride + j + 1] + b.w * g;
      }
    }
  }
  return grid[0];
}

double BernsteinPoly::basis(int index, const Barycentric& b) const {
  const auto& I = indices_[index];
  return multinomial(I) * std::pow(b.u, I[0]) * std::pow(b.v, I[1]) * std::pow(b.w, I[2]);
}

namespace {

/// Second Cartesian derivatives (xx, xy, yy) of a degree-d polynomial as
/// homogeneous barycentric monomials of degree d-2, indexed like `layout`.
struct SecondDerivatives {
  std::vector<double> xx, xy, yy;
};

SecondDerivatives second_derivatives(const BernsteinPoly& f, const BernsteinPoly& layout,
                                     const Triangle& tri) {
  const auto& g = tri.barycentric_gradients();
  SecondDerivatives out{std::vector<double>(layout.size(), 0.0),
                        std::vector<double>(layout.size(), 0.0),
                        std::vector<double>(layout.size(), 0.0)};
  for (int k = 0; k < f.size(); ++k) {
    const auto& I = f.multi_index(k);
    const double c = multinomial(I) * f.coefficients()[k];
    if (c == 0.0) continue;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const double factor = I[a] * (I[b] - (a == b ? 1 : 0));
        if (factor <= 0.0) continue;
        auto J = I;
        --J[a];
        --J[b];
        const int target = layout.index_of(J[0], J[1]);
        const double w = c * factor;
        out.xx[target] += w * g[a].x * g[b].x;
        out.xy[target] += w * g[a].x * g[b].y;
        out.yy[target] += w * g[a].y * g[b].y;
      }
    }
  }
  return out;
}

/// Integrals of products of degree-m monomials, m = layout degree.
Eigen::MatrixXd monomial_products(const BernsteinPoly& layout, const Triangle& tri) {
  Eigen::MatrixXd M(layout.size(), layout.size());
  for (int p = 0; p < layout.size(); ++p) {
    for (int q = 0; q < layout.size(); ++q) {
      const auto& P = layout.multi_index(p);
      const auto& Q = layout.multi_index(q);
      M(p, q) = integrate_bary_monomial(tri, P[0] + Q[0], P[1] + Q[1], P[2] + Q[2]);
    }
  }
  return M;
}

}  // namespace

double BernsteinPoly::h2_seminorm_squared(const Triangle& tri) const {
  if (degree_ < 2) return 0.0;
  const BernsteinPoly layout(degree_ - 2);
  const SecondDerivatives D = second_derivatives(*this, layout, tri);
  const Eigen::MatrixXd M = monomial_products(layout, tri);
  const Eigen::Map<const Eigen::VectorXd> xx(D.xx.data(), layout.size());
  const Eigen::Map<const Eigen::VectorXd> xy(D.xy.data(), layout.size());
  const Eigen::Map<const Eigen::VectorXd> yy(D.yy.data(), layout.size());
  return xx.dot(M * xx) + 2.0 * xy.dot(M * xy) + yy.dot(M * yy);
}

Eigen::MatrixXd BernsteinPoly::h2_gram(int degree, const Triangle& tri) {
  BernsteinPoly unit(degree);
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(unit.size(), unit.size());
  if (degree < 2) return G;
  const BernsteinPoly layout(degree - 2);
  const Eigen::MatrixXd M = monomial_products(layout, tri);
  Eigen::MatrixXd xx(layout.size(), unit.size());
  Eigen::MatrixXd xy(layout.size(), unit.size());
  Eigen::MatrixXd yy(layout.size(), unit.size());
  for (int k = 0; k < unit.size(); ++k) {
    std::fill(unit.coefficients().begin(), unit.coefficients().end(), 0.0);
    unit.coefficients()[k] = 1.0;
    const SecondDerivatives D = second_derivatives(unit, layout, tri);
    for (int r = 0; r < layout.size(); ++r) {
      xx(r, k) = D.xx[r];
      xy(r, k) = D.xy[r];
      yy(r, k) = D.yy[r];
    }
  }
  G = xx.transpose() * M * xx + 2.0 * xy.transpose() * M * xy + yy.transpose() * M * yy;
  return G;
}

std::vector<double> minimizer_nodal_values(const FMSpace& space, const Eigen::VectorXd& x) {
  const Mesh& mesh = space.mesh;
  std::vector<double> values(mesh.vertices().size(), 0.0);
  for (std::size_t e = 0; e < mesh.elements().size(); ++e) {
    const auto& el = mesh.elements()[e];
    const auto dofs = space.dofs.element_dofs(el);
    const Matrix6& C = space.local_bases[e];
    for (int k = 0; k < 3; ++k) {
      double v = 0.0;
      for (int j = 0; j < 6; ++j) {
        if (dofs[j] >= 0) v += C(k, j) * x[dofs[j]];
      }
      values[el.vertices[k]] = v;
    }
  }
  for (int c : mesh.corner_vertex_indices()) values[c] = 0.0;
  return values;
}

FitResult fit_polynomial(std::span<const double> nodal_values, const Mesh& mesh, int degree) {
  if (degree < 1) throw Error(ErrorCode::kInvalidParameter, "fit degree must be at least 1");
  if (nodal_values.size() != mesh.vertices().size()) {
    throw Error(ErrorCode::kInvalidParameter, "one nodal value per mesh vertex expected");
  }
  if (mesh.subdivisions() < degree) {
    throw Error(ErrorCode::kInsufficientData,
                "fit needs at least as many mesh nodes as polynomial coefficients (N >= d)");
  }

  BernsteinPoly poly(degree);
  std::vector<int> free_cols;
  for (int k = 0; k < poly.size(); ++k) {
    if (poly.multi_index(k)[0] == degree || poly.multi_index(k)[1] == degree ||
        poly.multi_index(k)[2] == degree) {
      continue;  // corner control points equal the corner values, held at 0
    }
    free_cols.push_back(k);
  }

  const Triangle& parent = mesh.parent();
  const auto rows = static_cast<Eigen::Index>(mesh.vertices().size());
  Eigen::MatrixXd design(rows, static_cast<Eigen::Index>(free_cols.size()));
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Barycentric b = parent.barycentric(mesh.vertices()[r]);
    for (std::size_t c = 0; c < free_cols.size(); ++c) {
      design(r, static_cast<Eigen::Index>(c)) = poly.basis(free_cols[c], b);
    }
    rhs[r] = nodal_values[r];
  }

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  const Eigen::VectorXd sol = qr.solve(rhs);
  for (std::size_t c = 0; c < free_cols.size(); ++c) {
    poly.coefficients()[free_cols[c]] = sol[static_cast<Eigen::Index>(c)];
  }

  FitResult result{std::move(poly), (design * sol - rhs).norm(),
                   qr.rank() < static_cast<Eigen::Index>(free_cols.size())};
  return result;
}

namespace {

std::vector<int> non_corner_indices(const BernsteinPoly& poly) {
  std::vector<int> out;
  const int d = poly.degree();
  for (int k = 0; k < poly.size(); ++k) {
    const auto& I = poly.multi_index(k);
    if (I[0] != d && I[1] != d && I[2] != d) out.push_back(k);
  }
  return out;
}

struct ConstrainedGram {
  std::vector<int> free;
  Eigen::LLT<Eigen::MatrixXd> llt;
};

ConstrainedGram constrained_gram(const Triangle& tri, int degree) {
  if (degree < 2) {
    throw Error(ErrorCode::kInvalidParameter, "extremal polynomial needs degree >= 2");
  }
  ConstrainedGram cg;
  cg.free = non_corner_indices(BernsteinPoly(degree));
  const Eigen::MatrixXd G = BernsteinPoly::h2_gram(degree, tri);
  Eigen::MatrixXd Gf(cg.free.size(), cg.free.size());
  for (std::size_t p = 0; p < cg.free.size(); ++p) {
    for (std::size_t q = 0; q < cg.free.size(); ++q) Gf(p, q) = G(cg.free[p], cg.free[q]);
  }
  cg.llt.compute(Gf);
  if (cg.llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kNotPositiveDefinite, "H2 Gram matrix is not positive definite");
  }
  return cg;
}

Eigen::VectorXd basis_values(const BernsteinPoly& layout, const std::vector<int>& free,
                             const Barycentric& b) {
  Eigen::VectorXd v(free.size());
  for (std::size_t p = 0; p < free.size(); ++p) v[p] = layout.basis(free[p], b);
  return v;
}

BernsteinPoly assemble_poly(int degree, const std::vector<int>& free, const Eigen::VectorXd& c) {
  BernsteinPoly f(degree);
  for (std::size_t p = 0; p < free.size(); ++p) f.coefficients()[free[p]] = c[p];
  return f;
}

}  // namespace

BernsteinPoly extremal_polynomial(const Triangle& tri, int degree, const Barycentric& x0) {
  const ConstrainedGram cg = constrained_gram(tri, degree);
  const Eigen::VectorXd b = basis_values(BernsteinPoly(degree), cg.free, x0);
  return assemble_poly(degree, cg.free, cg.llt.solve(b));
}

ExtremalBound extremal_lower_bound(const Triangle& tri, int degree, int grid,
                                   int samples_per_side) {
  if (grid < 2) throw Error(ErrorCode::kInvalidParameter, "grid must be at least 2");
  const ConstrainedGram cg = constrained_gram(tri, degree);
  const BernsteinPoly layout(degree);

  // f(x0)^2 / |f|^2 = b^T G^{-1} b for f = G^{-1} b.
  double best = -1.0;
  Barycentric peak;
  for (int i = 0; i <= grid; ++i) {
    for (int j = 0; i + j <= grid; ++j) {
      const Barycentric x0{static_cast<double>(i) / grid, static_cast<double>(j) / grid,
                           1.0 - static_cast<double>(i + j) / grid};
      const Eigen::VectorXd b = basis_values(layout, cg.free, x0);
      const double q = b.dot(cg.llt.solve(b));
      if (q > best) {
        best = q;
        peak = x0;
      }
    }
  }
  ExtremalBound out;
  out.peak = peak;
  out.poly = assemble_poly(degree, cg.free,
                           cg.llt.solve(basis_values(layout, cg.free, peak)));
  out.lower_bound = rayleigh_lower_bound(out.poly, tri, samples_per_side);
  return out;
}

double rayleigh_lower_bound(const BernsteinPoly& f, const Triangle& tri, int samples_per_side) {
  if (samples_per_side < 1) {
    throw Error(ErrorCode::kInvalidParameter, "sampling density must be positive");
  }
  const int d = f.degree();
  const double c1 = f.coefficient(d, 0);
  const double c2 = f.coefficient(0, d);
  const double c3 = d == 0 ? c1 : f.coefficient(0, 0);

  double coeff_scale = 0.0;
  for (double c : f.coefficients()) coeff_scale = std::max(coeff_scale, std::abs(c));
  const double seminorm = std::sqrt(std::max(0.0, f.h2_seminorm_squared(tri)));
  const double h = tri.longest_edge();
  if (!(seminorm > 1e-10 * coeff_scale * std::sqrt(tri.area()) / (h * h))) {
    throw Error(ErrorCode::kVacuousBound, "polynomial has zero H2-seminorm");
  }

  // f - Pi^L f; Pi^L f is the barycentric blend of the corner values.
  auto error_at = [&](const Barycentric& b) {
    return std::abs(f.evaluate(b) - (c1 * b.u + c2 * b.v + c3 * b.w));
  };

  double sup = 0.0;
  for (int lattice : {samples_per_side, d}) {
    if (lattice < 1) continue;
    for (int i = 0; i <= lattice; ++i) {
      for (int j = 0; i + j <= lattice; ++j) {
        const double u = static_cast<double>(i) / lattice;
        const double v = static_cast<double>(j) / lattice;
        sup = std::max(sup, error_at({u, v, 1.0 - u - v}));
      }
    }
  }
  return sup / seminorm;
}

}  // namespace clbound
