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

// D_p-projections onto convex subsets of L_p.
//
// Each convex set is handled through a finite real parameterization
// theta -> x(theta) with a Euclidean projection onto the parameter domain.
// D_p(., y) is convex in its first argument with gradient x~ - y~, so the
// projected-gradient fixed point is the global minimizer. Optimality is
// certified afterwards by sampling: the normal-cone inequality
// Re<x - x_m, y~ - x~_m> <= 0 and the three-point inequality
// D_p(x, y) >= D_p(x, x_m) + D_p(x_m, y) over points x of the set.

#pragma once

#include <functional>
#include <optional>
#include <variant>

#include "ncig/divergence.hpp"
#include "ncig/sampling.hpp"

namespace ncig {

struct ConeHull {
  std::vector<LpVector> generators;
};

struct AffineSlice {
  LpVector base;
  std::vector<LpVector> directions;
};

struct NormBall {
  LpVector center;
  double radius;
};

class ConvexSetSpec {
 public:
  using Variant = std::variant<ConeHull, AffineSlice, NormBall>;

  ConvexSetSpec(Variant v) : v_(std::move(v)) { validate(); }  // NOLINT: implicit by intent
  ConvexSetSpec(ConeHull s) : ConvexSetSpec(Variant(std::move(s))) {}      // NOLINT
  ConvexSetSpec(AffineSlice s) : ConvexSetSpec(Variant(std::move(s))) {}   // NOLINT
  ConvexSetSpec(NormBall s) : ConvexSetSpec(Variant(std::move(s))) {}      // NOLINT

  const Variant& variant() const { return v_; }
  const AlgebraShape& shape() const { return reference().shape(); }
  double order() const { return reference().order(); }
  std::string_view kind() const {
    static constexpr std::string_view names[] = {"cone", "affine", "ball"};
    return names[v_.index()];
  }

  bool contains_zero() const;

 private:
  const LpVector& reference() const {
    return std::visit(
        [](const auto& s) -> const LpVector& {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, ConeHull>) return s.generators.front();
          else if constexpr (std::is_same_v<T, AffineSlice>) return s.base;
          else return s.center;
        },
        v_);
  }

  void validate() const {
    std::visit(
        [](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, ConeHull>) {
            require(!s.generators.empty(), "cone needs at least one generator");
            for (const auto& g : s.generators) s.generators.front().require_compatible(g);
          } else if constexpr (std::is_same_v<T, AffineSlice>) {
            for (const auto& d : s.directions) s.base.require_compatible(d);
          } else {
            require(s.radius > 0.0 && std::isfinite(s.radius), "ball radius must be positive");
          }
        },
        v_);
  }

  Variant v_;
};

inline constexpr double kPolishFactor = 1e-2;

struct ProjectionOptions {
  double tolerance = 1e-8;
  int max_iter = 10000;
  std::uint64_t seed = 0;
  bool random_start = false;  // draw the initial point from `seed`
  int certificate_samples = 200;
};

struct ProjectionResult {
  LpVector x_m;
  double value;
  double kkt_residual;
  double three_point_worst;
  int iterations;
  bool converged;
  RealVector coefficients;  // cone / affine coordinates of x_m (empty for balls)
};

struct OptimalityResiduals {
  double normal_cone;  // max Re<x - x_m, y~ - x~_m>
  double three_point;  // max D(x, x_m) + D(x_m, y) - D(x, y)
};

namespace detail {

/// Real coordinates of a block list (real parts, then imaginary parts).
inline RealVector pack(const Blocks& blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += 2 * b.size();
  RealVector v(n);
  Eigen::Index k = 0;
  for (const auto& b : blocks) {
    for (Eigen::Index i = 0; i < b.size(); ++i) {
      v(k++) = b(i).real();
      v(k++) = b(i).imag();
    }
  }
  return v;
}

inline Blocks unpack(const RealVector& v, const AlgebraShape& shape) {
  Blocks blocks;
  Eigen::Index k = 0;
  for (int n : shape.block_dims()) {
    Matrix b(n, n);
    for (Eigen::Index i = 0; i < b.size(); ++i) {
      b(i) = Complex(v(k), v(k + 1));
      k += 2;
    }
    blocks.push_back(std::move(b));
  }
  return blocks;
}

/// Real Gram matrix Re<a_i, a_j> (Frobenius) of a family of block lists.
inline Eigen::MatrixXd real_gram(const std::vector<LpVector>& family) {
  const auto k = static_cast<Eigen::Index>(family.size());
  Eigen::MatrixXd g(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      Complex s = 0.0;
      for (std::size_t b = 0; b < family[0].blocks().size(); ++b) {
        s += linalg::hs_inner(family[static_cast<std::size_t>(i)].block(b),
                              family[static_cast<std::size_t>(j)].block(b));
      }
      g(i, j) = s.real();
    }
  }
  return g;
}

inline RealVector real_moments(const std::vector<LpVector>& family, const Blocks& target) {
  RealVector r(static_cast<Eigen::Index>(family.size()));
  for (std::size_t i = 0; i < family.size(); ++i) {
    Complex s = 0.0;
    for (std::size_t b = 0; b < target.size(); ++b) s += linalg::hs_inner(family[i].block(b), target[b]);
    r(static_cast<Eigen::Index>(i)) = s.real();
  }
  return r;
}

inline LpVector combine(const LpVector& base, const std::vector<LpVector>& family,
                        const RealVector& coeff) {
  Blocks out = base.blocks();
  for (std::size_t i = 0; i < family.size(); ++i) {
    out = add(out, family[i].blocks(), coeff(static_cast<Eigen::Index>(i)));
  }
  return {base.shape(), base.order(), std::move(out)};
}

/// Lawson-Hanson non-negative least squares: min ||A t - b|| s.t. t >= 0,
/// given A^T A and A^T b.
inline RealVector nnls(const Eigen::MatrixXd& ata, const RealVector& atb) {
  const Eigen::Index n = atb.size();
  RealVector t = RealVector::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  const double tol = 1e-12 * std::max(1.0, ata.diagonal().cwiseAbs().maxCoeff());
  for (int outer = 0; outer < 3 * n + 10; ++outer) {
    RealVector w = atb - ata * t;
    Eigen::Index best = -1;
    double wmax = tol;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!passive[static_cast<std::size_t>(i)] && w(i) > wmax) {
        wmax = w(i);
        best = i;
      }
    }
    if (best < 0) break;
    passive[static_cast<std::size_t>(best)] = true;
    for (int inner = 0; inner < 3 * n + 10; ++inner) {
      std::vector<Eigen::Index> idx;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (passive[static_cast<std::size_t>(i)]) idx.push_back(i);
      }
      const auto m = static_cast<Eigen::Index>(idx.size());
      Eigen::MatrixXd sub(m, m);
      RealVector rhs(m);
      for (Eigen::Index a = 0; a < m; ++a) {
        rhs(a) = atb(idx[static_cast<std::size_t>(a)]);
        for (Eigen::Index b = 0; b < m; ++b) {
          sub(a, b) = ata(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
        }
      }
      RealVector z_sub = sub.completeOrthogonalDecomposition().solve(rhs);
      RealVector z = RealVector::Zero(n);
      for (Eigen::Index a = 0; a < m; ++a) z(idx[static_cast<std::size_t>(a)]) = z_sub(a);
      bool feasible = true;
      for (Eigen::Index a = 0; a < m; ++a) feasible = feasible && z_sub(a) > 0.0;
      if (feasible) {
        t = z;
        break;
      }
      double step = 1.0;
      for (Eigen::Index i : idx) {
        if (z(i) <= 0.0) step = std::min(step, t(i) / (t(i) - z(i)));
      }
      t += step * (z - t);
      for (Eigen::Index i : idx) {
        if (t(i) <= 1e-15) {
          t(i) = 0.0;
          passive[static_cast<std::size_t>(i)] = false;
        }
      }
    }
  }
  return t;
}

/// Euclidean projection of a non-negative vector s onto {z >= 0 : sum z^p <= r^p}.
inline RealVector project_lp_ball(const RealVector& s, double p, double r) {
  const double target = std::pow(r, p);
  auto power_sum = [p](const RealVector& z) {
    double a = 0.0;
    for (double v : z) a += std::pow(v, p);
    return a;
  };
  if (power_sum(s) <= target) return s;
  // For a multiplier lam, z_i solves z + lam p z^{p-1} = s_i on [0, s_i].
  auto shrink = [&](double lam) {
    RealVector z(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      double lo = 0.0, hi = s(i), x = s(i);
      for (int it = 0; it < 100 && hi - lo > 1e-17 * (1.0 + s(i)); ++it) {
        double h = x + lam * p * std::pow(x, p - 1.0) - s(i);
        if (h > 0.0) hi = x; else lo = x;
        double dh = 1.0 + lam * p * (p - 1.0) * std::pow(x, p - 2.0);
        double xn = x - h / dh;
        x = (std::isfinite(xn) && xn > lo && xn < hi) ? xn : 0.5 * (lo + hi);
      }
      z(i) = x;
    }
    return z;
  };
  double lo = 0.0, hi = 1.0;
  while (power_sum(shrink(hi)) > target) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    if (power_sum(shrink(mid)) > target) lo = mid; else hi = mid;
  }
  return shrink(hi);
}

/// Frobenius-nearest point of the Schatten-p ball {x : ||x - c||_p <= r}.
inline Blocks project_schatten_ball(const Blocks& x, const Blocks& center, double p, double r) {
  std::vector<linalg::Svd> parts;
  Eigen::Index n = 0;
  for (std::size_t b = 0; b < x.size(); ++b) {
    parts.push_back(linalg::svd(x[b] - center[b]));
    n += parts.back().s.size();
  }
  RealVector s(n);
  Eigen::Index k = 0;
  for (const auto& d : parts) {
    s.segment(k, d.s.size()) = d.s;
    k += d.s.size();
  }
  RealVector z = project_lp_ball(s, p, r);
  Blocks out;
  k = 0;
  for (std::size_t b = 0; b < x.size(); ++b) {
    const auto& d = parts[b];
    RealVector zb = z.segment(k, d.s.size());
    k += d.s.size();
    out.push_back(center[b] + d.u * zb.asDiagonal() * d.v.adjoint());
  }
  return out;
}

struct Parameterization {
  std::function<LpVector(const RealVector&)> point;
  std::function<RealVector(const LpVector&)> pullback;  // theta-gradient of Re<x(theta), G>
  std::function<RealVector(const RealVector&)> project;
  RealVector start;
  bool has_coefficients;
};

inline Parameterization parameterize(const ConvexSetSpec& set, const LpVector& y,
                                     const ProjectionOptions& opts) {
  Rng rng(opts.seed);
  return std::visit(
      [&](const auto& s) -> Parameterization {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConeHull>) {
          const auto k = static_cast<Eigen::Index>(s.generators.size());
          LpVector origin = LpVector::zero(set.shape(), set.order());
          RealVector start = RealVector::Ones(k);
          const double gnorm = schatten_norm(combine(origin, s.generators, start));
          const double ynorm = schatten_norm(y);
          if (gnorm > 0.0 && ynorm > 0.0) start *= ynorm / gnorm;
          if (opts.random_start) {
            for (Eigen::Index i = 0; i < k; ++i) start(i) *= sampling::uniform(0.0, 2.0, rng);
          }
          return {[&s, origin](const RealVector& t) { return combine(origin, s.generators, t); },
                  [&s](const LpVector& g) { return real_moments(s.generators, g.blocks()); },
                  [](const RealVector& t) { return RealVector(t.cwiseMax(0.0)); }, start, true};
        } else if constexpr (std::is_same_v<T, AffineSlice>) {
          const auto k = static_cast<Eigen::Index>(s.directions.size());
          RealVector start = RealVector::Zero(k);
          if (opts.random_start) {
            std::normal_distribution<double> n01;
            for (Eigen::Index i = 0; i < k; ++i) start(i) = n01(rng);
          }
          return {[&s](const RealVector& c) { return combine(s.base, s.directions, c); },
                  [&s](const LpVector& g) { return real_moments(s.directions, g.blocks()); },
                  [](const RealVector& c) { return c; }, start, true};
        } else {
          const AlgebraShape shape = set.shape();
          const double p = set.order();
          RealVector start = pack(s.center.blocks());
          if (opts.random_start) {
            LpVector dir = sampling::random_lp_vector(shape, p, rng);
            start = pack((s.center + (s.radius * sampling::uniform(0.0, 1.0, rng) /
                                      schatten_norm(dir)) * dir)
                             .blocks());
          }
          return {[shape, p](const RealVector& v) { return LpVector(shape, p, unpack(v, shape)); },
                  [](const LpVector& g) { return pack(g.blocks()); },
                  [&s, shape, p](const RealVector& v) {
                    return pack(project_schatten_ball(unpack(v, shape), s.center.blocks(), p, s.radius));
                  },
                  start, false};
        }
      },
      set.variant());
}

/// Coordinates of a point of the set for certificate sampling scale, and a
/// membership distance (0 when inside).
struct Membership {
  double distance;
  RealVector coefficients;
};

inline Membership locate(const ConvexSetSpec& set, const LpVector& x) {
  return std::visit(
      [&](const auto& s) -> Membership {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConeHull>) {
          RealVector t = nnls(real_gram(s.generators), real_moments(s.generators, x.blocks()));
          LpVector fit = combine(LpVector::zero(x.shape(), x.order()), s.generators, t);
          return {schatten_norm(fit - x), t};
        } else if constexpr (std::is_same_v<T, AffineSlice>) {
          LpVector rel = x - s.base;
          RealVector c;
          if (s.directions.empty()) {
            c = RealVector();
          } else {
            c = real_gram(s.directions).completeOrthogonalDecomposition().solve(
                real_moments(s.directions, rel.blocks()));
          }
          LpVector fit = combine(s.base, s.directions, c);
          return {schatten_norm(fit - x), c};
        } else {
          return {std::max(0.0, schatten_norm(x - s.center) - s.radius), RealVector()};
        }
      },
      set.variant());
}

inline double membership_tolerance(const LpVector& x) {
  return 1e-6 * std::max(1.0, schatten_norm(x));
}

}  // namespace detail

inline bool ConvexSetSpec::contains_zero() const {
  LpVector zero = LpVector::zero(shape(), order());
  return detail::locate(*this, zero).distance <= 1e-10;
}

/// Random point of the set: Dirichlet-weighted generator combinations scaled
/// up to `scale`, Gaussian affine coordinates, or a uniform-radius ball point.
inline LpVector sample_convex_set(const ConvexSetSpec& set, Rng& rng, double scale = 1.0) {
  return std::visit(
      [&](const auto& s) -> LpVector {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConeHull>) {
          auto w = sampling::dirichlet(s.generators.size(), rng);
          const double r = sampling::uniform(0.0, scale, rng);
          RealVector t(static_cast<Eigen::Index>(w.size()));
          for (std::size_t i = 0; i < w.size(); ++i) t(static_cast<Eigen::Index>(i)) = r * w[i];
          return detail::combine(LpVector::zero(set.shape(), set.order()), s.generators, t);
        } else if constexpr (std::is_same_v<T, AffineSlice>) {
          std::normal_distribution<double> n01;
          RealVector c(static_cast<Eigen::Index>(s.directions.size()));
          for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = scale * n01(rng);
          return detail::combine(s.base, s.directions, c);
        } else {
          LpVector dir = sampling::random_lp_vector(set.shape(), set.order(), rng);
          const double dim = 2.0 * std::pow(set.shape().total_dim(), 2);
          const double r = s.radius * std::pow(sampling::uniform(0.0, 1.0, rng), 1.0 / dim);
          return s.center + (r / schatten_norm(dir)) * dir;
        }
      },
      set.variant());
}

inline OptimalityResiduals optimality_residuals(const LpVector& x_m, const LpVector& y,
                                                const ConvexSetSpec& set, int samples,
                                                std::uint64_t seed) {
  x_m.require_compatible(y);
  detail::require_same_shape(x_m.shape(), set.shape());
  detail::Membership where = detail::locate(set, x_m);
  if (where.distance > detail::membership_tolerance(x_m)) {
    throw DomainError("optimality_residuals: x_m is not in the convex set");
  }
  double scale = 1.0;
  if (set.kind() == "cone") scale = 2.0 * (1.0 + where.coefficients.sum());
  if (set.kind() == "affine" && where.coefficients.size() > 0) {
    scale = 1.0 + where.coefficients.cwiseAbs().maxCoeff();
  }

  Rng rng(seed);
  const LpVector direction = duality_map(y) - duality_map(x_m);
  const double d_my = divergence_Dp(x_m, y).value;
  OptimalityResiduals r{-std::numeric_limits<double>::infinity(),
                        -std::numeric_limits<double>::infinity()};
  for (int i = 0; i < samples; ++i) {
    LpVector x = sample_convex_set(set, rng, scale);
    r.normal_cone = std::max(r.normal_cone, pairing(x - x_m, direction).real());
    r.three_point = std::max(
        r.three_point, divergence_Dp(x, x_m).value + d_my - divergence_Dp(x, y).value);
  }
  return r;
}

inline ProjectionResult project_Dp(const LpVector& y, const ConvexSetSpec& set,
                                   const ProjectionOptions& opts = {}) {
  detail::require_same_shape(y.shape(), set.shape());
  if (std::abs(y.order() - set.order()) > 1e-12 * y.order()) {
    throw DomainError("projection target and set have different L_p orders");
  }
  require(opts.tolerance > 0.0 && opts.max_iter >= 0, "invalid solver options");

  detail::Parameterization par = detail::parameterize(set, y, opts);
  const LpVector y_dual = duality_map(y);
  const double y_const = potential(y_dual);

  struct State {
    RealVector theta;
    LpVector x;
    double f;
    RealVector grad;
  };
  auto evaluate = [&](RealVector theta) {
    LpVector x = par.point(theta);
    double f = potential(x) + y_const - pairing(x, y_dual).real();
    RealVector g = par.pullback(duality_map(x) - y_dual);
    return State{std::move(theta), std::move(x), f, std::move(g)};
  };
  auto kkt = [&](const State& s) {
    RealVector r = s.theta - par.project(s.theta - s.grad);
    return r.size() == 0 ? 0.0 : r.cwiseAbs().maxCoeff();
  };

  State cur = evaluate(par.project(par.start));
  double residual = kkt(cur);
  double step = 1.0 / std::max(1.0, cur.grad.norm());
  constexpr double kArmijo = 1e-4;
  constexpr double kShrink = 0.5;
  int it = 0;
  // Iterate past the requested tolerance so first-order certificates built
  // on x_m also land within it; convergence is still judged at the tolerance.
  const double target = kPolishFactor * opts.tolerance;
  for (; it < opts.max_iter && residual > target; ++it) {
    std::optional<State> next;
    double trial = step;
    for (int bt = 0; bt < 80; ++bt, trial *= kShrink) {
      State cand = evaluate(par.project(cur.theta - trial * cur.grad));
      const RealVector d = cand.theta - cur.theta;
      // Near the optimum f differences drown in rounding; for convex f,
      // <grad f(cand), d> <= 0 already certifies f(cand) <= f(cur).
      if (cand.f <= cur.f + kArmijo * cur.grad.dot(d) || cand.grad.dot(d) <= 0.0) {
        next = std::move(cand);
        break;
      }
    }
    if (!next) break;
    RealVector ds = next->theta - cur.theta;
    RealVector dg = next->grad - cur.grad;
    const double sy = ds.dot(dg);
    // Barzilai-Borwein trial step for the next iteration.
    step = sy > 0.0 ? ds.squaredNorm() / sy : 2.0 * trial;
    step = std::clamp(step, 1e-12, 1e12);
    cur = std::move(*next);
    residual = kkt(cur);
  }

  ProjectionResult result{cur.x, divergence_Dp(cur.x, y).value, residual, 0.0, it,
                          residual <= opts.tolerance,
                          par.has_coefficients ? cur.theta : RealVector()};
  if (opts.certificate_samples > 0) {
    result.three_point_worst =
        optimality_residuals(cur.x, y, set, opts.certificate_samples, opts.seed).three_point;
  }
  return result;
}

inline bool sublevel_membership(const LpVector& y, double d, const LpVector& x) {
  require(d >= 0.0, "sublevel radius must be non-negative");
  // D_p is a difference of terms of size Psi_p(x) + Psi_q(y~); allow for
  // the rounding of that cancellation.
  const double scale = potential(x) + potential(duality_map(y));
  return divergence_Dp(x, y).value <= d + 1e-12 * (1.0 + scale);
}

struct AlphaProjection {
  NormalFunctional omega_m;
  ProjectionResult result;
  double prop_gap;  // min over sampled sigma of S(sigma,psi) - S(omega_m,psi) - S_{-a}(omega_m,sigma)
};

/// alpha-projection of psi onto the alpha-convex set l_alpha^{-1}(C).
inline AlphaProjection alpha_project(const NormalFunctional& psi, const ConvexSetSpec& set,
                                     double alpha, const ProjectionOptions& opts = {}) {
  const double p = order_from_alpha(alpha);
  if (std::abs(set.order() - p) > 1e-12 * p) {
    throw DomainError("convex set order does not match alpha: expected p = 2/(1-alpha)");
  }
  LpVector y = alpha_embed(psi, alpha);
  ProjectionResult res = project_Dp(y, set, opts);
  NormalFunctional omega_m = alpha_unembed(res.x_m, alpha);

  double gap = std::numeric_limits<double>::infinity();
  if (opts.certificate_samples > 0) {
    detail::Membership where = detail::locate(set, res.x_m);
    double scale = 1.0;
    if (set.kind() == "cone") scale = 2.0 * (1.0 + where.coefficients.sum());
    Rng rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
    const double s_m = alpha_divergence(omega_m, psi, alpha).value;
    for (int i = 0; i < opts.certificate_samples; ++i) {
      NormalFunctional sigma = alpha_unembed(sample_convex_set(set, rng, scale), alpha);
      gap = std::min(gap, alpha_divergence(sigma, psi, alpha).value - s_m -
                              alpha_divergence(omega_m, sigma, -alpha).value);
    }
  }
  return {std::move(omega_m), std::move(res), gap};
}

/// pi_x(y) = y - Re<y, x~> x / (pq) for x on the radius-p sphere.
inline LpVector tangent_project(const LpVector& x, const LpVector& y) {
  x.require_compatible(y);
  const double p = x.order();
  const double q = x.dual_order();
  require(std::abs(schatten_norm(x) - p) <= 1e-8, "tangent_project needs ||x||_p = p");
  return y - (pairing(y, duality_map(x)).real() / (p * q)) * x;
}

}  // namespace ncig
