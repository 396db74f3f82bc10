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

// Non-commutative L_p spaces in canonical (trace) representation.
//
// An element u * Delta^{1/p} with polar part u and positive part rho is
// stored as the matrix u rho^{1/p}, blockwise. In this representation the
// pairing with L_q is Tr(X^dagger Y) and does not depend on a reference
// weight, so the weight never appears explicitly.
//
// alpha-coordinates: omega -> p u rho^{1/p}, p = 2 / (1 - alpha). The dual
// coordinate of x = p u rho^{1/p} is x~ = q u rho^{1/q}.

#pragma once

#include <span>

#include "ncig/algebra.hpp"

namespace ncig {

inline constexpr double kMinOrder = 1.0 + 1e-6;
inline constexpr double kMaxOrder = 1e6;

inline double conjugate_order(double p) { return p / (p - 1.0); }

/// Order p = 2/(1 - alpha) of the L_p space carrying alpha-coordinates.
inline double order_from_alpha(double alpha) {
  require(alpha > -1.0 && alpha < 1.0, "alpha out of (-1,1)");
  return 2.0 / (1.0 - alpha);
}

inline void validate_order(double p) {
  require(std::isfinite(p) && p >= kMinOrder && p <= kMaxOrder,
          "L_p order must lie in [1+1e-6, 1e6]");
}

class LpVector {
 public:
  LpVector(AlgebraShape shape, double order, Blocks blocks)
      : shape_(std::move(shape)), order_(order), blocks_(std::move(blocks)) {
    validate_order(order_);
    detail::check_blocks(shape_, blocks_);
  }

  static LpVector zero(const AlgebraShape& shape, double order) {
    return {shape, order, detail::zero_blocks(shape)};
  }

  const AlgebraShape& shape() const { return shape_; }
  double order() const { return order_; }
  double dual_order() const { return conjugate_order(order_); }
  const Blocks& blocks() const { return blocks_; }
  const Matrix& block(std::size_t i) const { return blocks_.at(i); }

  bool is_zero() const {
    return std::all_of(blocks_.begin(), blocks_.end(),
                       [](const Matrix& b) { return b.isZero(0.0); });
  }

  friend LpVector operator+(const LpVector& a, const LpVector& b) {
    a.require_compatible(b);
    return {a.shape_, a.order_, detail::add(a.blocks_, b.blocks_)};
  }
  friend LpVector operator-(const LpVector& a, const LpVector& b) {
    a.require_compatible(b);
    return {a.shape_, a.order_, detail::add(a.blocks_, b.blocks_, -1.0)};
  }
  friend LpVector operator*(Complex s, const LpVector& a) {
    return {a.shape_, a.order_, detail::scale(a.blocks_, s)};
  }
  friend LpVector operator*(double s, const LpVector& a) { return Complex(s) * a; }

  void require_compatible(const LpVector& other) const {
    detail::require_same_shape(shape_, other.shape_);
    if (std::abs(order_ - other.order_) > 1e-12 * order_) {
      throw DomainError("L_p orders differ");
    }
  }

 private:
  AlgebraShape shape_;
  double order_;
  Blocks blocks_;
};

/// Schatten norm (sum of s^p over all singular values of all blocks)^{1/p},
/// valid for any p >= 1.
inline double schatten_norm(std::span<const Matrix> blocks, double p) {
  require(p >= 1.0, "Schatten order must be >= 1");
  double acc = 0.0;
  for (const auto& b : blocks) {
    RealVector s = linalg::singular_values(b);
    for (double v : s) acc += std::pow(v, p);
  }
  return std::pow(acc, 1.0 / p);
}

inline double schatten_norm(const LpVector& x) { return schatten_norm(x.blocks(), x.order()); }

/// ||x/p||_p^p.
inline double scaled_power_sum(const LpVector& x) {
  const double p = x.order();
  double acc = 0.0;
  for (const auto& b : x.blocks()) {
    RealVector s = linalg::singular_values(b);
    for (double v : s) acc += std::pow(v / p, p);
  }
  return acc;
}

inline LpVector alpha_embed(const NormalFunctional& omega, double alpha) {
  const double p = order_from_alpha(alpha);
  const double clip = detail::clip_threshold(omega.blocks());
  Blocks x;
  for (const auto& w : omega.blocks()) {
    x.push_back(p * linalg::singular_map(w, [p](double s) { return std::pow(s, 1.0 / p); }, clip));
  }
  return {omega.shape(), p, std::move(x)};
}

inline NormalFunctional alpha_unembed(const LpVector& x, double alpha) {
  const double p = order_from_alpha(alpha);
  if (std::abs(x.order() - p) > 1e-12 * p) {
    throw DomainError("L_p order does not match alpha: expected p = 2/(1-alpha)");
  }
  const double clip = detail::clip_threshold(x.blocks());
  Blocks w;
  for (const auto& b : x.blocks()) {
    w.push_back(linalg::singular_map(b, [p](double s) { return std::pow(s / p, p); }, clip));
  }
  return {x.shape(), std::move(w)};
}

/// Sesquilinear pairing <X, Y> = sum_i Tr(X_i^dagger Y_i) between L_p and L_q.
inline Complex pairing(const LpVector& x, const LpVector& y) {
  detail::require_same_shape(x.shape(), y.shape());
  if (std::abs(1.0 / x.order() + 1.0 / y.order() - 1.0) > 1e-12) {
    throw DomainError("pairing requires conjugate orders 1/p + 1/q = 1");
  }
  Complex v = 0.0;
  for (std::size_t i = 0; i < x.blocks().size(); ++i) v += linalg::hs_inner(x.block(i), y.block(i));
  return v;
}

/// Bilinear form [X, Y] = sum_i Tr(X_i Y_i); no order constraint beyond shape.
inline Complex bilinear(const LpVector& x, const LpVector& y) {
  detail::require_same_shape(x.shape(), y.shape());
  Complex v = 0.0;
  for (std::size_t i = 0; i < x.blocks().size(); ++i) {
    v += linalg::trace_of_product(x.block(i), y.block(i));
  }
  return v;
}

/// Product T_1 ... T_n of L_{p_k} elements, living in L_r with
/// 1/r = sum 1/p_k. r = 1 is allowed here (unlike LpVector).
struct ProductElement {
  AlgebraShape shape;
  double order;
  Blocks blocks;

  /// The bilinear form [T_1 ... T_n] = sum_i Tr of the product block.
  Complex trace() const {
    Complex t = 0.0;
    for (const auto& b : blocks) t += b.trace();
    return t;
  }
  double norm() const { return schatten_norm(blocks, order); }
};

inline ProductElement holder_product(std::span<const LpVector> factors) {
  require(!factors.empty(), "holder_product needs at least one factor");
  double inv = 0.0;
  for (const auto& f : factors) {
    detail::require_same_shape(factors.front().shape(), f.shape());
    inv += 1.0 / f.order();
  }
  require(inv <= 1.0 + 1e-12, "sum of reciprocal orders exceeds 1");
  Blocks prod = factors.front().blocks();
  for (std::size_t k = 1; k < factors.size(); ++k) {
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = prod[i] * factors[k].block(i);
  }
  return {factors.front().shape(), inv >= 1.0 ? 1.0 : 1.0 / inv, std::move(prod)};
}

inline LpVector duality_map(const LpVector& x) {
  const double p = x.order();
  const double q = x.dual_order();
  const double clip = detail::clip_threshold(x.blocks());
  Blocks y;
  for (const auto& b : x.blocks()) {
    y.push_back(q * linalg::singular_map(b, [p](double s) { return std::pow(s / p, p - 1.0); }, clip));
  }
  return {x.shape(), q, std::move(y)};
}

/// The unique unit vector v of L_q with Re <x/||x||_p, v> = 1, obtained as
/// ||x/p||_p^{1-p} x~ / q.
inline LpVector norming_functional(const LpVector& x) {
  require(!x.is_zero(), "norming functional of the zero vector is undefined");
  const double p = x.order();
  const double q = x.dual_order();
  const double scale = std::pow(scaled_power_sum(x), (1.0 - p) / p) / q;
  return scale * duality_map(x);
}

/// Psi_p(x) = q ||x/p||_p^p.
inline double potential(const LpVector& x) { return x.dual_order() * scaled_power_sum(x); }

inline double potential_directional_derivative(const LpVector& x, const LpVector& y) {
  x.require_compatible(y);
  return pairing(y, duality_map(x)).real();
}

struct DualityReport {
  LpVector x;
  LpVector x_tilde;
  double norm_defect;     // | ||x~/q||_q^q - ||x/p||_p^p |
  double pairing_defect;  // | Re<x, x~> - pq ||x/p||_p^p |
};

inline DualityReport duality_report(const LpVector& x) {
  LpVector xt = duality_map(x);
  const double p = x.order();
  const double q = x.dual_order();
  const double lhs = scaled_power_sum(x);
  return {x, xt, std::abs(scaled_power_sum(xt) - lhs),
          std::abs(pairing(x, xt).real() - p * q * lhs)};
}

/// |Psi_q(x~) - (Re<x, x~> - Psi_p(x))|.
inline double legendre_defect(const LpVector& x) {
  LpVector xt = duality_map(x);
  return std::abs(potential(xt) - (pairing(x, xt).real() - potential(x)));
}

}  // namespace ncig
