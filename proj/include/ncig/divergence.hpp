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

// Bregman-type divergence D_p on L_p and the alpha-divergence S_alpha on
// the predual, together with the residual functions used to check the
// identities and inequalities they satisfy.

#pragma once

#include "ncig/lp.hpp"

namespace ncig {

struct DivergenceValue {
  double value;
  double lower_bound;  // the f_p (resp. g_p) lower bound
  Complex cross_term;  // <x, y~>
};

struct ScalarBounds {
  double f;  // f_p(t) = p + q t^p - pq t
  double g;  // g_p(t) = p + q t - pq t^{1/p}
};

inline ScalarBounds scalar_bounds(double t, double p) {
  require(t >= 0.0 && std::isfinite(t), "scalar bound argument must be >= 0");
  validate_order(p);
  const double q = conjugate_order(p);
  return {p + q * std::pow(t, p) - p * q * t, p + q * t - p * q * std::pow(t, 1.0 / p)};
}

/// D_p(x, y) = Psi_p(x) + Psi_q(y~) - Re<x, y~>.
inline DivergenceValue divergence_Dp(const LpVector& x, const LpVector& y) {
  x.require_compatible(y);
  const double p = x.order();
  LpVector yt = duality_map(y);
  Complex cross = pairing(x, yt);
  double value = potential(x) + potential(yt) - cross.real();
  double bound = 0.0;  // limit convention at y = 0
  if (!y.is_zero()) {
    bound = scaled_power_sum(y) * scalar_bounds(schatten_norm(x) / schatten_norm(y), p).f;
  }
  return {value, bound, cross};
}

struct CosineReport {
  double cosine;    // |D(x,y) + D(y,z) - D(x,z) - Re<x - y, z~ - y~>|
  double symmetry;  // |D_p(y,x) - D_q(x~, y~)|
};

inline CosineReport cosine_residual(const LpVector& x, const LpVector& y, const LpVector& z) {
  x.require_compatible(y);
  x.require_compatible(z);
  LpVector xt = duality_map(x);
  LpVector yt = duality_map(y);
  LpVector zt = duality_map(z);
  double lhs = divergence_Dp(x, y).value + divergence_Dp(y, z).value;
  double rhs = divergence_Dp(x, z).value + pairing(x - y, zt - yt).real();
  double sym = std::abs(divergence_Dp(y, x).value - divergence_Dp(xt, yt).value);
  return {std::abs(lhs - rhs), sym};
}

/// S_alpha(omega1, omega2) = D_p(l_alpha(omega1), l_alpha(omega2)), evaluated as
/// q||omega1||_1 + p||omega2||_1 - Re<l_alpha(omega1), l_{-alpha}(omega2)>.
inline DivergenceValue alpha_divergence(const NormalFunctional& omega1,
                                        const NormalFunctional& omega2, double alpha) {
  detail::require_same_shape(omega1.shape(), omega2.shape());
  const double p = order_from_alpha(alpha);
  const double q = conjugate_order(p);
  const double n1 = norm_1(omega1);
  const double n2 = norm_1(omega2);
  Complex cross = pairing(alpha_embed(omega1, alpha), alpha_embed(omega2, -alpha));
  double bound = n2 > 0.0 ? n2 * scalar_bounds(n1 / n2, p).g : 0.0;
  return {q * n1 + p * n2 - cross.real(), bound, cross};
}

/// |S(phi,psi) + S(psi,sigma) - S(phi,sigma) - Re<l_a(phi) - l_a(psi), l_-a(sigma) - l_-a(psi)>|.
inline double pythagorean_residual(const NormalFunctional& phi, const NormalFunctional& psi,
                                   const NormalFunctional& sigma, double alpha) {
  double lhs = alpha_divergence(phi, psi, alpha).value + alpha_divergence(psi, sigma, alpha).value;
  double inner = pairing(alpha_embed(phi, alpha) - alpha_embed(psi, alpha),
                         alpha_embed(sigma, -alpha) - alpha_embed(psi, -alpha))
                     .real();
  return std::abs(lhs - alpha_divergence(phi, sigma, alpha).value - inner);
}

struct ScalingGaps {
  double gap1;  // (1-alpha) S_alpha - (1-beta) S_beta
  double gap2;  // (1+beta) S_beta - (1+alpha) S_alpha
};

inline ScalingGaps scaling_inequality_gap(const NormalFunctional& phi, const NormalFunctional& psi,
                                          double alpha, double beta) {
  require(phi.is_positive() && psi.is_positive(), "scaling inequalities need positive functionals");
  require(alpha <= beta, "scaling inequalities need alpha <= beta");
  const double sa = alpha_divergence(phi, psi, alpha).value;
  const double sb = alpha_divergence(phi, psi, beta).value;
  return {(1.0 - alpha) * sa - (1.0 - beta) * sb, (1.0 + beta) * sb - (1.0 + alpha) * sa};
}

/// S_0 = 2 sum_i ||u rho^{1/2} - v nu^{1/2}||_F^2 from the polar data directly.
inline double hellinger_S0(const NormalFunctional& omega1, const NormalFunctional& omega2) {
  detail::require_same_shape(omega1.shape(), omega2.shape());
  PolarDecomposition a = polar_decompose(omega1);
  PolarDecomposition b = polar_decompose(omega2);
  const double ca = detail::clip_threshold(a.rho.blocks());
  const double cb = detail::clip_threshold(b.rho.blocks());
  double acc = 0.0;
  for (std::size_t i = 0; i < omega1.blocks().size(); ++i) {
    Matrix d = a.u.block(i) * linalg::psd_power(a.rho.block(i), 0.5, ca) -
               b.u.block(i) * linalg::psd_power(b.rho.block(i), 0.5, cb);
    acc += d.squaredNorm();
  }
  return 2.0 * acc;
}

/// S_alpha restricted to unit-norm functionals: pq (1 - Re<u rho^{1/p}, v nu^{1/q}>).
inline double sphere_divergence(const NormalFunctional& omega1, const NormalFunctional& omega2,
                                double alpha) {
  require(std::abs(norm_1(omega1) - 1.0) <= 1e-10 && std::abs(norm_1(omega2) - 1.0) <= 1e-10,
          "sphere_divergence needs unit-norm functionals");
  const double p = order_from_alpha(alpha);
  const double q = conjugate_order(p);
  const double c = pairing(alpha_embed(omega1, alpha), alpha_embed(omega2, -alpha)).real() / (p * q);
  return p * q * (1.0 - c);
}

struct DifferenceBound {
  double difference;  // |phi(a) - psi(a)|
  double bound;       // ||a|| (||x+y|| ||x~-y~|| + ||x-y|| ||x~+y~||) / 2
};

/// Continuity estimate of l_alpha^{-1} on the positive cone for a test element a.
inline DifferenceBound functional_difference_bound(const NormalFunctional& phi,
                                                   const NormalFunctional& psi,
                                                   const AlgebraElement& a, double alpha) {
  LpVector x = alpha_embed(phi, alpha);
  LpVector y = alpha_embed(psi, alpha);
  LpVector xt = alpha_embed(phi, -alpha);
  LpVector yt = alpha_embed(psi, -alpha);
  double diff = std::abs(apply_functional(phi, a) - apply_functional(psi, a));
  double bound = 0.5 * a.norm() *
                 (schatten_norm(x + y) * schatten_norm(xt - yt) +
                  schatten_norm(x - y) * schatten_norm(xt + yt));
  return {diff, bound};
}

/// For x, y on the radius-p sphere: ||(x/p + y/p)/2||_p - |1 - D_p(x,y)/(2pq)|,
/// which is non-negative.
inline double sphere_convexity_gap(const LpVector& x, const LpVector& y) {
  x.require_compatible(y);
  const double p = x.order();
  const double q = x.dual_order();
  require(std::abs(schatten_norm(x) - p) <= 1e-8 && std::abs(schatten_norm(y) - p) <= 1e-8,
          "sphere_convexity_gap needs points on the radius-p sphere");
  double mid = schatten_norm((0.5 / p) * (x + y));
  return mid - std::abs(1.0 - divergence_Dp(x, y).value / (2.0 * p * q));
}

}  // namespace ncig
