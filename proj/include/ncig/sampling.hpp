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

// Seeded samplers. Every sampler draws from an explicit engine; there is no
// global random state.

#pragma once

#include <random>

#include "ncig/lp.hpp"

namespace ncig {

using Rng = std::mt19937_64;

namespace sampling {

/// Smallest accepted singular value of a sampled block, relative to its
/// largest one.
inline constexpr double kMinRelativeSingularValue = 1e-6;

inline Matrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  Matrix g(rows, cols);
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      double re = n01(rng);
      double im = n01(rng);
      g(i, j) = Complex(s * re, s * im);
    }
  }
  return g;
}

namespace detail {

inline bool well_conditioned(const Matrix& m) {
  RealVector s = linalg::singular_values(m);
  return s.minCoeff() >= kMinRelativeSingularValue * s.maxCoeff();
}

}  // namespace detail

/// Positive definite functional with blocks G^dagger G; optionally scaled to
/// unit trace.
inline NormalFunctional random_positive(const AlgebraShape& shape, Rng& rng,
                                        bool normalize = false) {
  Blocks b;
  for (int n : shape.block_dims()) {
    Matrix w;
    do {
      Matrix g = complex_gaussian(n, n, rng);
      w = g.adjoint() * g;
      w = 0.5 * (w + w.adjoint());
    } while (!detail::well_conditioned(w));
    b.push_back(std::move(w));
  }
  if (normalize) {
    double tr = 0.0;
    for (const auto& w : b) tr += w.trace().real();
    for (auto& w : b) w /= tr;
  }
  return {shape, std::move(b)};
}

/// Generic (non-hermitian) functional with Gaussian density blocks;
/// optionally scaled to unit trace norm.
inline NormalFunctional random_functional(const AlgebraShape& shape, Rng& rng,
                                          bool normalize = false) {
  Blocks b;
  for (int n : shape.block_dims()) {
    Matrix w;
    do {
      w = complex_gaussian(n, n, rng);
    } while (!detail::well_conditioned(w));
    b.push_back(std::move(w));
  }
  NormalFunctional f(shape, b);
  if (normalize) return (1.0 / norm_1(f)) * f;
  return f;
}

inline NormalFunctional random_hermitian_functional(const AlgebraShape& shape, Rng& rng) {
  Blocks b;
  for (int n : shape.block_dims()) {
    Matrix g = complex_gaussian(n, n, rng);
    b.push_back(0.5 * (g + g.adjoint()));
  }
  return {shape, std::move(b)};
}

inline AlgebraElement random_hermitian_element(const AlgebraShape& shape, Rng& rng) {
  Blocks b;
  for (int n : shape.block_dims()) {
    Matrix g = complex_gaussian(n, n, rng);
    b.push_back(0.5 * (g + g.adjoint()));
  }
  return {shape, std::move(b)};
}

inline AlgebraElement random_element(const AlgebraShape& shape, Rng& rng) {
  Blocks b;
  for (int n : shape.block_dims()) b.push_back(complex_gaussian(n, n, rng));
  return {shape, std::move(b)};
}

inline LpVector random_lp_vector(const AlgebraShape& shape, double p, Rng& rng) {
  Blocks b;
  for (int n : shape.block_dims()) {
    Matrix w;
    do {
      w = complex_gaussian(n, n, rng);
    } while (!detail::well_conditioned(w));
    b.push_back(std::move(w));
  }
  return {shape, p, std::move(b)};
}

/// Haar-distributed unitary via QR of a Ginibre matrix with phase correction.
inline Matrix haar_unitary(Eigen::Index n, Rng& rng) {
  Matrix z = complex_gaussian(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    Complex d = r(i, i);
    double a = std::abs(d);
    q.col(i) *= a > 0.0 ? d / a : Complex(1.0);
  }
  return q;
}

inline std::vector<double> dirichlet(std::size_t k, Rng& rng) {
  std::gamma_distribution<double> gamma(1.0, 1.0);
  std::vector<double> w(k);
  double s = 0.0;
  for (auto& x : w) s += (x = gamma(rng));
  for (auto& x : w) x /= s;
  return w;
}

inline double uniform(double lo, double hi, Rng& rng) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Random shape with `blocks` summands of dimension in [lo, hi].
inline AlgebraShape random_shape(int blocks, int lo, int hi, Rng& rng) {
  std::uniform_int_distribution<int> dim(lo, hi);
  std::vector<int> d(static_cast<std::size_t>(blocks));
  for (auto& n : d) n = dim(rng);
  return AlgebraShape(std::move(d));
}

}  // namespace sampling
}  // namespace ncig
