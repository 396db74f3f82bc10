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

// Finite-dimensional von Neumann algebras M = M_{n_1} + ... + M_{n_k},
// their elements, and normal functionals on them. A functional is stored by
// its density blocks W_i so that omega(a) = sum_i Tr(W_i a_i).

#pragma once

#include <numeric>
#include <utility>
#include <vector>

#include "ncig/linalg.hpp"

namespace ncig {

class AlgebraShape {
 public:
  AlgebraShape() : dims_{1} {}
  explicit AlgebraShape(std::vector<int> block_dims) : dims_(std::move(block_dims)) {
    require(!dims_.empty(), "algebra must have at least one block");
    for (int n : dims_) require(n >= 1, "block dimensions must be positive");
  }
  AlgebraShape(std::initializer_list<int> dims) : AlgebraShape(std::vector<int>(dims)) {}

  const std::vector<int>& block_dims() const { return dims_; }
  std::size_t block_count() const { return dims_.size(); }
  int block_dim(std::size_t i) const { return dims_.at(i); }
  int total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), 0); }
  bool is_commutative() const {
    return std::all_of(dims_.begin(), dims_.end(), [](int n) { return n == 1; });
  }

  friend bool operator==(const AlgebraShape&, const AlgebraShape&) = default;

 private:
  std::vector<int> dims_;
};

using Blocks = std::vector<Matrix>;

namespace detail {

inline void check_blocks(const AlgebraShape& shape, const Blocks& blocks) {
  if (blocks.size() != shape.block_count()) {
    throw ShapeMismatch("block count does not match algebra shape");
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const int n = shape.block_dim(i);
    if (blocks[i].rows() != n || blocks[i].cols() != n) {
      throw ShapeMismatch("block " + std::to_string(i) + " has wrong size");
    }
  }
}

inline Blocks zero_blocks(const AlgebraShape& shape) {
  Blocks b;
  for (int n : shape.block_dims()) b.push_back(Matrix::Zero(n, n));
  return b;
}

inline Blocks identity_blocks(const AlgebraShape& shape) {
  Blocks b;
  for (int n : shape.block_dims()) b.push_back(Matrix::Identity(n, n));
  return b;
}

inline void require_same_shape(const AlgebraShape& a, const AlgebraShape& b) {
  if (!(a == b)) throw ShapeMismatch("algebra shapes differ");
}

/// Absolute clip threshold: kClipTolerance relative to the largest singular
/// value over all blocks.
inline double clip_threshold(const Blocks& blocks) {
  double top = 0.0;
  for (const auto& b : blocks) {
    if (b.size() == 0) continue;
    top = std::max(top, linalg::operator_norm(b));
  }
  return kClipTolerance * top;
}

inline Blocks add(const Blocks& a, const Blocks& b, Complex sb = 1.0) {
  Blocks r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + sb * b[i];
  return r;
}

inline Blocks scale(const Blocks& a, Complex s) {
  Blocks r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

}  // namespace detail

/// Element a of the algebra, one square block per summand.
class AlgebraElement {
 public:
  AlgebraElement(AlgebraShape shape, Blocks blocks)
      : shape_(std::move(shape)), blocks_(std::move(blocks)) {
    detail::check_blocks(shape_, blocks_);
  }

  static AlgebraElement identity(const AlgebraShape& shape) {
    return {shape, detail::identity_blocks(shape)};
  }
  static AlgebraElement zero(const AlgebraShape& shape) {
    return {shape, detail::zero_blocks(shape)};
  }

  const AlgebraShape& shape() const { return shape_; }
  const Blocks& blocks() const { return blocks_; }
  const Matrix& block(std::size_t i) const { return blocks_.at(i); }

  /// Operator norm: largest singular value over all blocks.
  double norm() const {
    double r = 0.0;
    for (const auto& b : blocks_) r = std::max(r, linalg::operator_norm(b));
    return r;
  }

  AlgebraElement adjoint() const {
    Blocks r;
    for (const auto& b : blocks_) r.push_back(b.adjoint());
    return {shape_, std::move(r)};
  }

  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    detail::require_same_shape(a.shape_, b.shape_);
    Blocks r;
    for (std::size_t i = 0; i < a.blocks_.size(); ++i) r.push_back(a.blocks_[i] * b.blocks_[i]);
    return {a.shape_, std::move(r)};
  }
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    detail::require_same_shape(a.shape_, b.shape_);
    return {a.shape_, detail::add(a.blocks_, b.blocks_, -1.0)};
  }

 private:
  AlgebraShape shape_;
  Blocks blocks_;
};

/// Normal functional omega(a) = sum_i Tr(W_i a_i), i.e. an element of the
/// predual identified with L_1 through its density blocks.
class NormalFunctional {
 public:
  NormalFunctional(AlgebraShape shape, Blocks densities)
      : shape_(std::move(shape)), blocks_(std::move(densities)) {
    detail::check_blocks(shape_, blocks_);
    classify();
  }

  static NormalFunctional zero(const AlgebraShape& shape) {
    return {shape, detail::zero_blocks(shape)};
  }

  const AlgebraShape& shape() const { return shape_; }
  const Blocks& blocks() const { return blocks_; }
  const Matrix& block(std::size_t i) const { return blocks_.at(i); }
  bool is_hermitian() const { return hermitian_; }
  bool is_positive() const { return positive_; }

  /// omega(1) = sum_i Tr W_i.
  Complex total() const {
    Complex t = 0.0;
    for (const auto& b : blocks_) t += b.trace();
    return t;
  }

  friend NormalFunctional operator+(const NormalFunctional& a, const NormalFunctional& b) {
    detail::require_same_shape(a.shape_, b.shape_);
    return {a.shape_, detail::add(a.blocks_, b.blocks_)};
  }
  friend NormalFunctional operator-(const NormalFunctional& a, const NormalFunctional& b) {
    detail::require_same_shape(a.shape_, b.shape_);
    return {a.shape_, detail::add(a.blocks_, b.blocks_, -1.0)};
  }
  friend NormalFunctional operator*(Complex s, const NormalFunctional& a) {
    return {a.shape_, detail::scale(a.blocks_, s)};
  }
  friend NormalFunctional operator*(double s, const NormalFunctional& a) {
    return Complex(s) * a;
  }

 private:
  void classify() {
    hermitian_ = std::all_of(blocks_.begin(), blocks_.end(),
                             [](const Matrix& w) { return linalg::is_hermitian(w); });
    positive_ = hermitian_;
    if (!positive_) return;
    for (const auto& w : blocks_) {
      linalg::Eigh e = linalg::eigh(w);
      double scale = std::max(1.0, e.values.cwiseAbs().maxCoeff());
      if (e.values.minCoeff() < -1e-12 * scale) {
        positive_ = false;
        return;
      }
    }
  }

  AlgebraShape shape_;
  Blocks blocks_;
  bool hermitian_ = false;
  bool positive_ = false;
};

/// omega = u . rho blockwise: W_i = u_i rho_i, rho positive, u^dagger u = support(rho).
struct PolarDecomposition {
  AlgebraElement u;
  NormalFunctional rho;
  AlgebraElement support;
};

struct FunctionalClass {
  bool hermitian;
  bool positive;
  double norm_1;
};

inline Complex apply_functional(const NormalFunctional& omega, const AlgebraElement& a) {
  detail::require_same_shape(omega.shape(), a.shape());
  Complex v = 0.0;
  for (std::size_t i = 0; i < a.blocks().size(); ++i) {
    v += linalg::trace_of_product(omega.block(i), a.block(i));
  }
  return v;
}

inline PolarDecomposition polar_decompose(const NormalFunctional& omega) {
  const double clip = detail::clip_threshold(omega.blocks());
  Blocks u, rho, support;
  for (const auto& w : omega.blocks()) {
    linalg::Polar pd = linalg::polar(w, clip);
    support.push_back(pd.u.adjoint() * pd.u);
    u.push_back(std::move(pd.u));
    rho.push_back(std::move(pd.modulus));
  }
  const auto& shape = omega.shape();
  return {AlgebraElement(shape, std::move(u)), NormalFunctional(shape, std::move(rho)),
          AlgebraElement(shape, std::move(support))};
}

inline AlgebraElement support_projection(const NormalFunctional& rho) {
  require(rho.is_positive(), "support_projection requires a positive functional");
  const double clip = detail::clip_threshold(rho.blocks());
  Blocks p;
  for (const auto& w : rho.blocks()) p.push_back(linalg::support_projection(w, clip));
  return {rho.shape(), std::move(p)};
}

/// Trace norm ||omega||_1 = sum of singular values of all density blocks.
inline double norm_1(const NormalFunctional& omega) {
  double s = 0.0;
  for (const auto& w : omega.blocks()) s += linalg::singular_values(w).sum();
  return s;
}

inline FunctionalClass classify_functional(const NormalFunctional& omega) {
  return {omega.is_hermitian(), omega.is_positive(), norm_1(omega)};
}

}  // namespace ncig
