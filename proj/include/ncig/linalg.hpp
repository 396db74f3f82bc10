// Copyright 2026 The ncig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ncig {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Raised when an argument lies outside the domain of an operation
/// (alpha out of range, non-positive functional, order mismatch, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when block structures of two operands disagree.
class ShapeMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Relative eigenvalue / singular value cut-off deciding support membership.
inline constexpr double kClipTolerance = 1e-12;

inline void require(bool condition, const std::string& message) {
  if (!condition) throw DomainError(message);
}

namespace linalg {

/// Singular value decomposition M = U diag(s) V^dagger of a square block.
struct Svd {
  Matrix u;
  RealVector s;
  Matrix v;
};

inline Svd svd(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

/// Spectral decomposition of a hermitian block (the hermitian part is used).
struct Eigh {
  RealVector values;  // ascending
  Matrix vectors;
};

inline Eigh eigh(const Matrix& h) {
  Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline double max_abs_deviation_from_hermitian(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Matrix& m, double tol = 1e-12) {
  double scale = m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
  return max_abs_deviation_from_hermitian(m) <= tol * std::max(1.0, scale);
}

inline RealVector singular_values(const Matrix& m) {
  if (m.size() == 0) return RealVector();
  return Eigen::JacobiSVD<Matrix>(m).singularValues();
}

/// Applies g to the singular values: U g(s) V^dagger. Singular values below
/// `abs_clip` are treated as exact zeros and mapped to zero. For hermitian
/// input the computation goes through the eigendecomposition, so the result
/// is exactly hermitian: E sign(l) g(|l|) E^dagger.
template <typename F>
Matrix singular_map(const Matrix& m, F&& g, double abs_clip) {
  const auto n = m.rows();
  if (n == 0) return m;
  if (is_hermitian(m, 1e-14)) {
    Eigh e = eigh(m);
    RealVector d(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      double l = e.values(i);
      double a = std::abs(l);
      d(i) = a <= abs_clip ? 0.0 : (l < 0 ? -g(a) : g(a));
    }
    return e.vectors * d.asDiagonal() * e.vectors.adjoint();
  }
  Svd d = svd(m);
  RealVector t(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    t(i) = d.s(i) <= abs_clip ? 0.0 : g(d.s(i));
  }
  return d.u * t.asDiagonal() * d.v.adjoint();
}

/// Polar decomposition m = u * |m| with |m| = (m^dagger m)^{1/2} and u the
/// partial isometry vanishing on ker |m| (u^dagger u = support of |m|).
struct Polar {
  Matrix u;
  Matrix modulus;
};

inline Polar polar(const Matrix& m, double abs_clip) {
  const auto n = m.rows();
  if (n == 0) return {m, m};
  Svd d = svd(m);
  Matrix u = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (d.s(i) > abs_clip) u += d.u.col(i) * d.v.col(i).adjoint();
  }
  Matrix modulus = d.v * d.s.asDiagonal() * d.v.adjoint();
  modulus = 0.5 * (modulus + modulus.adjoint());
  return {u, modulus};
}

/// Orthogonal projection onto the range of a PSD block; eigenvalues at or
/// below `abs_clip` count as kernel.
inline Matrix support_projection(const Matrix& psd, double abs_clip) {
  const auto n = psd.rows();
  if (n == 0) return psd;
  Eigh e = eigh(psd);
  Matrix p = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (e.values(i) > abs_clip) p += e.vectors.col(i) * e.vectors.col(i).adjoint();
  }
  return p;
}

/// Hermitian matrix power on the support: sum over l > clip of l^s e e^dagger.
inline Matrix psd_power(const Matrix& psd, double exponent, double abs_clip) {
  const auto n = psd.rows();
  if (n == 0) return psd;
  Eigh e = eigh(psd);
  RealVector d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i) = e.values(i) > abs_clip ? std::pow(e.values(i), exponent) : 0.0;
  }
  return e.vectors * d.asDiagonal() * e.vectors.adjoint();
}

inline Complex trace_of_product(const Matrix& a, const Matrix& b) {
  // Tr(a b) = sum_jk a_jk b_kj
  return (a.cwiseProduct(b.transpose())).sum();
}

inline Complex hs_inner(const Matrix& a, const Matrix& b) {
  // Tr(a^dagger b)
  return (a.conjugate().cwiseProduct(b)).sum();
}

inline double operator_norm(const Matrix& m) {
  RealVector s = singular_values(m);
  return s.size() == 0 ? 0.0 : s.maxCoeff();
}

}  // namespace linalg
}  // namespace ncig
