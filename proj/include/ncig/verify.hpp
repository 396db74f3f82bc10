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

// Randomized property suite. Each check draws its own seeded samples and
// reports a residual, the worst observed violation of an identity or
// inequality; it passes when residual <= tolerance.

#pragma once

#include <map>

#include "ncig/io.hpp"

namespace ncig::verify {

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::vector<AlgebraShape> dims{AlgebraShape{2}, AlgebraShape{3}, AlgebraShape{4},
                                 AlgebraShape{2, 2}, AlgebraShape{1, 1, 1}, AlgebraShape{1, 2, 3}};
  std::vector<double> alphas{-0.6, -1.0 / 3.0, 0.0, 1.0 / 3.0, 0.6};
  std::map<std::string, int> samples;        // overrides per check
  std::map<std::string, double> tolerances;  // overrides per check
  std::optional<double> global_tolerance;    // overrides everything
  std::optional<int> global_samples;
  std::string output;                        // empty: stdout
  std::string format = "json";               // json | csv

  void validate() const {
    require(!dims.empty(), "config needs at least one algebra shape");
    require(!alphas.empty(), "config needs at least one alpha");
    for (double a : alphas) require(a > -1.0 && a < 1.0, "alpha out of (-1,1)");
    for (const auto& [k, t] : tolerances) require(t > 0.0, "tolerance for " + k + " must be > 0");
    if (global_tolerance) require(*global_tolerance > 0.0, "tolerance must be > 0");
    require(format == "json" || format == "csv", "format must be json or csv");
  }
};

struct ReportRow {
  std::string check;
  double p;
  double alpha;
  double residual;
  bool pass;
};

struct CheckContext {
  Rng rng;
  const std::vector<AlgebraShape>* shapes;
  double alpha;
  double p;
  int samples;

  const AlgebraShape& shape(int i) const {
    return (*shapes)[static_cast<std::size_t>(i) % shapes->size()];
  }
  bool commutative_only() const {
    return std::all_of(shapes->begin(), shapes->end(),
                       [](const AlgebraShape& s) { return s.is_commutative(); });
  }
};

using CheckFn = std::function<double(CheckContext&)>;

struct CheckSpec {
  std::string name;
  int default_samples;
  double default_tolerance;
  std::optional<double> fixed_alpha;  // run once at this alpha instead of per alpha
  CheckFn run;
};

namespace detail {

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline LpVector left_multiply(const AlgebraElement& a, const LpVector& x) {
  Blocks b;
  for (std::size_t i = 0; i < x.blocks().size(); ++i) b.push_back(a.block(i) * x.block(i));
  return {x.shape(), x.order(), std::move(b)};
}

inline LpVector conjugate_by(const std::vector<Matrix>& u, const LpVector& x) {
  Blocks b;
  for (std::size_t i = 0; i < x.blocks().size(); ++i) b.push_back(u[i] * x.block(i) * u[i].adjoint());
  return {x.shape(), x.order(), std::move(b)};
}

inline NormalFunctional conjugate_by(const std::vector<Matrix>& u, const NormalFunctional& w) {
  Blocks b;
  for (std::size_t i = 0; i < w.blocks().size(); ++i) b.push_back(u[i] * w.block(i) * u[i].adjoint());
  return {w.shape(), std::move(b)};
}

inline std::vector<Matrix> random_unitaries(const AlgebraShape& s, Rng& rng) {
  std::vector<Matrix> u;
  for (int n : s.block_dims()) u.push_back(sampling::haar_unitary(n, rng));
  return u;
}

inline LpVector positive_lp(const AlgebraShape& s, double p, Rng& rng) {
  return {s, p, sampling::random_positive(s, rng).blocks()};
}

inline double max_anti_hermitian(const LpVector& x) {
  double m = 0.0;
  for (const auto& b : x.blocks()) m = std::max(m, linalg::max_abs_deviation_from_hermitian(b));
  return m;
}

inline double min_eigenvalue(const LpVector& x) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& b : x.blocks()) m = std::min(m, linalg::eigh(b).values.minCoeff());
  return m;
}

inline AlgebraShape commutative_shape(int k) {
  return AlgebraShape(std::vector<int>(static_cast<std::size_t>(k), 1));
}

}  // namespace detail

/// The catalogue of checks, ordered by name.
inline std::vector<CheckSpec> catalogue() {
  using detail::positive_lp;
  std::vector<CheckSpec> c;

  c.push_back({"alpha_positivity", 100, 1e-9, std::nullopt, [](CheckContext& ctx) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < ctx.samples; ++i) {
      auto phi = sampling::random_functional(ctx.shape(i), ctx.rng);
      auto psi = sampling::random_functional(ctx.shape(i), ctx.rng);
      auto v = alpha_divergence(phi, psi, ctx.alpha);
      worst = std::max({worst, v.lower_bound - v.value, -v.lower_bound,
                        std::abs(alpha_divergence(phi, phi, ctx.alpha).value)});
    }
    return worst;
  }});

  c.push_back({"alpha_projection_gap", 4, 1e-6, std::nullopt, [](CheckContext& ctx) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < ctx.samples; ++i) {
      const auto& s = ctx.shape(i);
      std::vector<LpVector> gens;
      for (int k = 0; k < 3; ++k) gens.push_back(positive_lp(s, ctx.p, ctx.rng));
      ConvexSetSpec set{ConeHull{gens}};
      auto psi = sampling::random_positive(s, ctx.rng);
      ProjectionOptions opts;
      opts.seed = ctx.rng();
      opts.certificate_samples = 100;
      AlphaProjection ap = alpha_project(psi, set, ctx.alpha, opts);
      if (!ap.result.converged) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, -ap.prop_gap);
      // Normal-cone curve: displacements t (psi~ - x~_m) pair non-positively
      // with every feasible direction x - x_m.
      LpVector disp = alpha_embed(psi, -ctx.alpha) - duality_map(ap.result.x_m);
      Rng srng(opts.seed);
      const double scale = 2.0 * (1.0 + ap.result.coefficients.sum());
      for (int k = 0; k < 100; ++k) {
        LpVector x = sample_convex_set(set, srng, scale);
        const double base = pairing(x - ap.result.x_m, disp).real();
        for (double t : {0.5, 1.0, 2.0, 5.0}) worst = std::max(worst, t * base);
      }
    }
    return worst;
  }});

  c.push_back({"alpha_symmetry", 100, 1e-10, std::nullopt, [](CheckContext& ctx) {
    double worst = 0.0;
    for (int i = 0; i < ctx.samples; ++i) {
      auto phi = sampling::random_functional(ctx.shape(i), ctx.rng);
      auto psi = sampling::random_functional(ctx.shape(i), ctx.rng);
      worst = std::max(worst, std::abs(alpha_divergence(phi, psi, ctx.alpha).value -
                                       alpha_divergence(psi, phi, -ctx.alpha).value));
    }
    return worst;
  }});

  c.push_back({"channel_chain", 50, 1e-9, std::nullopt, [](CheckContext& ctx) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < ctx.samples; ++i) {
      const auto& s = ctx.shape(i);
      const auto& mid = ctx.shape(i + 1);
      const auto& out = ctx.shape(i + 2);
      KrausChannel f1 = channels::random(s, mid, 2 + i % 3, ctx.rng);
      KrausChannel f2 = channels::random(mid, out, 2 + (i + 1) % 3, ctx.rng);
      auto phi = sampling::random_positive(s, ctx.rng);
      auto psi = sampling::random_positive(s, ctx.rng);
      auto p1 = apply_predual(f1, phi), q1 = apply_predual(f1, psi);
      KrausChannel both = channels::compose(f2, f1);
      const double s0 = alpha_divergence(phi, psi, ctx.alpha).value;
      const double s1 = alpha_divergence(p1, q1, ctx.alpha).value;
      const double s2 = alpha_divergence(apply_predual(both, phi), apply_predual(both, psi), ctx.alpha).value;
      worst = std::max({worst, s1 - s0, s2 - s1});
    }
    return worst;
  }});

  c.push_back({"classical_reduction", 100, 1e-12, std::nullopt, [](CheckContext& ctx) {
    double worst = 0.0;
    const double p = ctx.p, q = conjugate_order(p);
    for (int i = 0; i < ctx.samples; ++i) {
      const int k = 2 + i % 5;
      AlgebraShape s = detail::commutative_shape(k);
      auto phi = sampling::random_positive(s, ctx.rng, true);
      auto psi = sampling::random_positive(s, ctx.rng, true);
      double expect = 0.0;
      for (int j = 0; j < k; ++j) {
        const double r = phi.block(j)(0, 0).real(), v = psi.block(j)(0, 0).real();
        expect += q * r + p * v - p * q * std::pow(r, 1.0 / p) * std::pow(v, 1.0 / q);
      }
      worst = std::max(worst, std::abs(alpha_divergence(phi, psi, ctx.alpha).value - expect));
    }
    return worst;
  }});

  c.push_back({"continuity_estimate", 100, 1e-10, std::nullopt, [](CheckContext& ctx) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < ctx.samples; ++i) {
      const auto& s = ctx.shape(i);
      auto phi = sampling::random_positive(s, ctx.rng);
      auto psi = sampling::random_positive(s, ctx.rng);
      auto a = sampling::random_hermitian_element(s, ctx.rng);
      auto b = functional_difference_bound(phi, psi, a, ctx.alpha);
      worst = std::max(worst, b.difference - b.bound);
    }
    return worst;
  }});

  c.push_back({"cosine_law", 100, 1e-10, std::nullopt, [](CheckContext& ctx) {
    double worst = 0.0;
    for (int i = 0; i < ctx.samples; ++i) {
      const auto& s = ctx.shape(i);
      auto x = sampling::random_lp_vector(s, ctx.p, ctx.rng);
      auto y = sampling::random_lp_vector(s, ctx.p, ctx.rng);
      auto z = sampling::random_lp_vector(s, ctx.p, ctx.rng);
      worst = std::max(worst, cosine_residual(x, y, z).cosine);
    }
    return worst;
  }});

  c.push_back({"d2_closed_form", 100, 1e-10, 0.0, [](CheckContext& ctx) {
    double worst = 0.0;
    for (int i = 0; i < ctx.samples; ++i) {
      auto x = sampling::random_lp_vector(ctx.shape(i), 2.0, ctx.rng);
      auto y = sampling::random_lp_vector(ctx.shape(i), 2.0, ctx.rng);
      const double e = 0.5 * std::pow(schatten_norm(x - y), 2);
      worst = std::max(worst, std::abs(divergence_Dp(x, y).value - e));
    }
    return worst;
  }});

  c.push_back({"divergence_lower_bound", 200, 1e-9, std::nullopt, [](CheckContext& ctx) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < ctx.samples; ++i) {
      auto x = sampling::random_lp_vector(ctx.shape(i), ctx.p, ctx.rng);
      auto y = sampling::random_lp_vector(ctx.shape(i), ctx.p, ctx.rng);
      if (i % 3 == 0) y = sampling::uniform(0.1, 3.0, ctx.rng) * y;
      auto v = divergence_Dp(x, y);
      worst = std::max({worst, v.lower_bound - v.value, -v.value});
    }
    return worst;
  }});

  c.push_back({"divergence_self_zero", 100, 1e-12, std::nullopt, [](CheckContext& ctx) {
    double worst = 0.0;
    for (int i = 0; i < ctx.samples; ++i) {
      auto x = sampling::random_lp_vector(ctx.shape(i), ctx.p, ctx.rng);
      worst = std::max(worst, std::abs(divergence_Dp(x, x).value));
    }
    return worst;
  }});

  c.push_back({"double_duality", 100, 1e-9, std::nullopt, [](CheckContext& ctx) {
    double worst = 0.0;
    for (int i = 0; i < ctx.samples; ++i) {
      auto x = sampling::random_lp_vector(ctx.shape(i), ctx.p, ctx.rng);
      worst = std::max(worst, schatten_norm(duality_map(duality_map(x)) - x) / (1.0 + schatten_norm(x)));
    }
    return worst;
  }});

  c.push_back({"dp_first_argument_convexity", 100, 1e-9, std::nullopt, [](CheckContext& ctx) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < ctx.samples; ++i) {
      const auto& s = ctx.shape(i);
      auto x1 = sampling::random_lp_vector(s, ctx.p, ctx.rng);
      auto x2 = sampling::random_lp_vector(s, ctx.p, ctx.rng);
      auto y = sampling::random_lp_vector(s, ctx.p, ctx.rng);
      const double t = sampling::uniform(0.0, 1.0, ctx.rng);
      const double lhs = divergence_Dp(t * x1 + (1.0 - t) * x2, y).value;
      worst = std::max(worst, lhs - t * divergence_Dp(x1, y).value - (1.0 - t) * divergence_Dp(x2, y).value);
    }
    return worst;
  }});

  c.push_back({"duality_identity", 100, 1e-9, std::nullopt, [](CheckContext& ctx) {
    double worst = 0.0;
    const double pq = ctx.p * conjugate_order(ctx.p);
    for (int i = 0; i < ctx.samples; ++i) {
      const auto& s = ctx.shape(i);
      auto omega = sampling::random_positive(s, ctx.rng);
      auto a = sampling::random_hermitian_element(s, ctx.rng);
      LpVector x = alpha_embed(omega, ctx.alpha);
      Complex lhs = pairing(x, detail::left_multiply(a, duality_map(x)));
      Complex rhs = pq * apply_functional(omega, a);
      worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
    }
    return worst;
  }});

  c.push_back({"duality_norms", 100, 1e-9, std::nullopt, [](CheckContext& ctx) {
    double worst = 0.0;
    for (int i = 0; i < ctx.samples; ++i) {
      auto x = sampling::random_lp_vector(ctx.shape(i), ctx.p, ctx.rng);
      DualityReport r = duality_report(x);
      const double mag = 1.0 + ctx.p * conjugate_order(ctx.p) * scaled_power_sum(x);
      worst = std::max(worst, std::max(r.norm_defect, r.pairing_defect) / mag);
    }
    return worst;
  }});

  c.push_back({"duality_symmetry", 100, 1e-10, std::nullopt, [](CheckContext& ctx) {
    double worst = 0.0;
    for (int i = 0; i < ctx.samples; ++i) {
      auto x = sampling::random_lp_vector(ctx.shape(i), ctx.p, ctx.rng);
      auto y = sampling::random_lp_vector(ctx.shape(i), ctx.p, ctx.rng);
      worst = std::max(worst, cosine_residual(x, y, y).symmetry);
    }
    return worst;
  }});

  c.push_back({"embedding_roundtrip", 100, 1e-10, std::nullopt, [](CheckContext& ctx) {
    double worst = 0.0;
    for (int i = 0; i < ctx.samples; ++i) {
      auto omega = sampling::random_functional(ctx.shape(i), ctx.rng);
      auto back = alpha_unembed(alpha_embed(omega, ctx.alpha), ctx.alpha);
      worst = std::max(worst, norm_1(back - omega) / (1.0 + norm_1(omega)));
    }
    return worst;
  }});

  c.push_back({"hellinger_s0", 100, 1e-10, 0.0, [](CheckContext& ctx) {
    double worst = 0.0;
    for (int i = 0; i < ctx.samples; ++i) {
      auto phi = sampling::random_functional(ctx.shape(i), ctx.rng);
      auto psi = i % 2 ? sampling::random_functional(ctx.shape(i), ctx.rng)
                       : sampling::random_positive(ctx.shape(i), ctx.rng);
      worst = std::max(worst, std::abs(hellinger_S0(phi, psi) - alpha_divergence(phi, psi, 0.0).value));
    }
    return worst;
  }});

  c.push_back({"hermiticity_transport", 100, 1e-10, std::nullopt, [](CheckContext& ctx) {
    double worst = 0.0;
    for (int i = 0; i < ctx.samples; ++i) {
      const auto& s = ctx.shape(i);
      auto h = sampling::random_hermitian_functional(s, ctx.rng);
      worst = std::max(worst, detail::max_anti_hermitian(alpha_embed(h, ctx.alpha)));
      LpVector xp = alpha_embed(sampling::random_positive(s, ctx.rng), ctx.alpha);
      worst = std::max({worst, detail::max_anti_hermitian(xp), -detail::min_eigenvalue(xp)});
      if (!s.is_commutative()) {
        // A non-hermitian functional must not land in the hermitian part.
        auto g = sampling::random_functional(s, ctx.rng);
        if (detail::max_anti_hermitian(alpha_embed(g, ctx.alpha)) < 1e-6) worst = 1.0;
      }
      // Converse: hermitian embedding unembeds to a hermitian functional.
      LpVector hx = detail::positive_lp(s, ctx.p, ctx.rng) - detail::positive_lp(s, ctx.p, ctx.rng);
      NormalFunctional back = alpha_unembed(hx, ctx.alpha);
      if (!back.is_hermitian()) worst = 1.0;
    }
    return worst;
  }});

  c.push_back({"holder_cyclicity", 100, 1e-12, std::nullopt, [](CheckContext& ctx) {
    double worst = 0.0;
    const double q = conjugate_order(ctx.p);
    for (int i = 0; i < ctx.samples; ++i) {
      const auto& s = ctx.shape(i);
      std::vector<LpVector> ab{sampling::random_lp_vector(s, ctx.p, ctx.rng),
                               sampling::random_lp_vector(s, q, ctx.rng)};
      std::vector<LpVector> ba{ab[1], ab[0]};
      Complex t1 = holder_product(ab).trace(), t2 = holder_product(ba).trace();
      worst = std::max(worst, std::abs(t1 - t2) / (1.0 + std::abs(t1)));
    }
    return worst;
  }});

  c.push_back({"holder_inequality", 200, 1e-10, std::nullopt, [](CheckContext& ctx) {
    double worst = -std::numeric_limits<double>::infinity();
    const double q = conjugate_order(ctx.p);
    for (int i = 0; i < ctx.samples; ++i) {
      auto x = sampling::random_lp_vector(ctx.shape(i), ctx.p, ctx.rng);
      auto y = sampling::random_lp_vector(ctx.shape(i), q, ctx.rng);
      if (i % 4 == 0) y = duality_map(x);  // the equality case
      const double bound = schatten_norm(x) * schatten_norm(y);
      worst = std::max(worst, (std::abs(pairing(x, y)) - bound) / (1.0 + bound));
    }
    return worst;
  }});

  c.push_back({"joint_convexity", 100, 1e-9, std::nullopt, [](CheckContext& ctx) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < ctx.samples; ++i) {
      const auto& s = ctx.shape(i);
      auto p1 = sampling::random_positive(s, ctx.rng), p2 = sampling::random_positive(s, ctx.rng);
      auto q1 = sampling::random_positive(s, ctx.rng), q2 = sampling::random_positive(s, ctx.rng);
      const double t = std::array{0.25, 0.5, 0.75}[static_cast<std::size_t>(i % 3)];
      const double lhs = alpha_divergence(t * p1 + (1 - t) * p2, t * q1 + (1 - t) * q2, ctx.alpha).value;
      const double rhs = t * alpha_divergence(p1, q1, ctx.alpha).value +
                         (1 - t) * alpha_divergence(p2, q2, ctx.alpha).value;
      worst = std::max(worst, lhs - rhs);
    }
    return worst;
  }});

  c.push_back({"legendre_conjugacy", 100, 1e-10, std::nullopt, [](CheckContext& ctx) {
    double worst = 0.0;
    for (int i = 0; i < ctx.samples; ++i) {
      auto x = sampling::random_lp_vector(ctx.shape(i), ctx.p, ctx.rng);
      worst = std::max(worst, legendre_defect(x) / (1.0 + potential(x)));
    }
    return worst;
  }});

  c.push_back({"modular_moments", 100, 1e-10, std::nullopt, [](CheckContext& ctx) {
    double worst = 0.0;
    const double p = ctx.p, q = conjugate_order(p);
    for (int i = 0; i < ctx.samples; ++i) {
      const auto& s = ctx.shape(i);
      auto phi = sampling::random_positive(s, ctx.rng);
      auto psi = sampling::random_positive(s, ctx.rng);
      ModularSpectrum m = modular_spectrum(phi, psi);
      double w0 = 0.0, w1 = 0.0, wp = 0.0;
      for (const auto& pr : m.pairs) {
        w0 += pr.weight;
        w1 += pr.eigenvalue * pr.weight;
        wp += std::pow(pr.eigenvalue, 1.0 / p) * pr.weight;
      }
      double cross = 0.0;
      for (std::size_t b = 0; b < s.block_count(); ++b) {
        cross += linalg::trace_of_product(linalg::psd_power(phi.block(b), 1.0 / p, 0.0),
                                          linalg::psd_power(psi.block(b), 1.0 / q, 0.0))
                     .real();
      }
      worst = std::max({worst, std::abs(w0 - psi.total().real()), std::abs(w1 - phi.total().real()),
                        std::abs(wp - cross)});
    }
    return worst;
  }});

  c.push_back({"monotonicity", 100, 1e-9, std::nullopt, [](CheckContext& ctx) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < ctx.samples; ++i) {
      const auto& in = ctx.shape(i);
      const auto& out = ctx.shape(i / 2 + 1);
      KrausChannel ch = channels::random(in, out, 2 + i % 3, ctx.rng);
      auto phi = sampling::random_positive(in, ctx.rng);
      auto psi = sampling::random_positive(in, ctx.rng);
      worst = std::max(worst, -monotonicity_gap(ch, phi, psi, ctx.alpha));
    }
    return worst;
  }});

  c.push_back({"potential_convexity", 100, 1e-10, std::nullopt, [](CheckContext& ctx) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < ctx.samples; ++i) {
      auto x = sampling::random_lp_vector(ctx.shape(i), ctx.p, ctx.rng);
      auto y = sampling::random_lp_vector(ctx.shape(i), ctx.p, ctx.rng);
      const double t = sampling::uniform(0.0, 1.0, ctx.rng);
      worst = std::max(worst, potential(t * x + (1 - t) * y) - t * potential(x) - (1 - t) * potential(y));
    }
    return worst;
  }});

  c.push_back({"potential_derivative_fd", 100, 1e-5, std::nullopt, [](CheckContext& ctx) {
    double worst = 0.0;
    constexpr double h = 1e-5;
    for (int i = 0; i < ctx.samples; ++i) {
      auto x = sampling::random_lp_vector(ctx.shape(i), ctx.p, ctx.rng);
      auto y = sampling::random_lp_vector(ctx.shape(i), ctx.p, ctx.rng);
      const double d = potential_directional_derivative(x, y);
      const double fd = (potential(x + h * y) - potential(x - h * y)) / (2 * h);
      worst = std::max(worst, std::abs(d - fd) / std::max(std::abs(d), 1.0));
    }
    return worst;
  }});

  c.push_back({"projection_certificates", 3, 1e-6, std::nullopt, [](CheckContext& ctx) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < ctx.samples; ++i) {
      const auto& s = ctx.shape(i);
      std::vector<LpVector> gens;
      for (int k = 0; k < 3; ++k) gens.push_back(positive_lp(s, ctx.p, ctx.rng));
      ConvexSetSpec set{ConeHull{gens}};
      auto y = sampling::random_lp_vector(s, ctx.p, ctx.rng);
      ProjectionOptions a, b;
      a.certificate_samples = b.certificate_samples = 0;
      b.random_start = true;
      b.seed = ctx.rng();
      ProjectionResult r1 = project_Dp(y, set, a);
      ProjectionResult r2 = project_Dp(y, set, b);
      if (!r1.converged || !r2.converged) return std::numeric_limits<double>::infinity();
      OptimalityResiduals cert = optimality_residuals(r1.x_m, y, set, 200, ctx.rng());
      worst = std::max({worst, cert.normal_cone, cert.three_point, schatten_norm(r1.x_m - r2.x_m)});
    }
    return worst;
  }});

  c.push_back({"projection_closed_form", 20, 1e-8, 0.0, [](CheckContext& ctx) {
    double worst = 0.0;
    for (int i = 0; i < ctx.samples; ++i) {
      const auto& s = ctx.shape(i);
      auto g = sampling::random_lp_vector(s, 2.0, ctx.rng);
      auto y = sampling::random_lp_vector(s, 2.0, ctx.rng);
      ProjectionOptions opts;
      opts.certificate_samples = 0;
      ProjectionResult r = project_Dp(y, ConvexSetSpec{ConeHull{{g}}}, opts);
      const double t = std::max(0.0, pairing(g, y).real() / std::pow(schatten_norm(g), 2));
      worst = std::max(worst, schatten_norm(r.x_m - t * g));
    }
    return worst;
  }});

  c.push_back({"projection_continuity", 2, 1e-7, std::nullopt, [](CheckContext& ctx) {
    // y -> x_m is continuous: along y + eps h the displacement of x_m must
    // vanish, decaying at least linearly at the smallest scales.
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < ctx.samples; ++i) {
      const auto& s = ctx.shape(i);
      std::vector<LpVector> gens;
      for (int k = 0; k < 2; ++k) gens.push_back(positive_lp(s, ctx.p, ctx.rng));
      ConvexSetSpec set{ConeHull{gens}};
      auto y = sampling::random_lp_vector(s, ctx.p, ctx.rng);
      auto h = sampling::random_lp_vector(s, ctx.p, ctx.rng);
      ProjectionOptions opts;
      opts.certificate_samples = 0;
      LpVector base = project_Dp(y, set, opts).x_m;
      std::vector<double> d;
      for (double eps : {1e-2, 1e-3, 1e-4, 1e-5}) {
        d.push_back(schatten_norm(project_Dp(y + eps * h, set, opts).x_m - base));
      }
      for (std::size_t k = 2; k < d.size(); ++k) worst = std::max(worst, d[k] - 0.2 * d[k - 1]);
    }
    return worst;
  }});

  c.push_back({"pythagorean", 100, 1e-10, std::nullopt, [](CheckContext& ctx) {
    double worst = 0.0;
    for (int i = 0; i < ctx.samples; ++i) {
      const auto& s = ctx.shape(i);
      auto a = sampling::random_functional(s, ctx.rng);
      auto b = sampling::random_positive(s, ctx.rng);
      auto d = sampling::random_functional(s, ctx.rng);
      worst = std::max(worst, pythagorean_residual(a, b, d, ctx.alpha));
    }
    return worst;
  }});

  c.push_back({"quasientropy_cross_oracle", 50, 1e-9, std::nullopt, [](CheckContext& ctx) {
    double worst = 0.0;
    for (int i = 0; i < ctx.samples; ++i) {
      auto phi = sampling::random_positive(ctx.shape(i), ctx.rng);
      auto psi = sampling::random_positive(ctx.shape(i), ctx.rng);
      worst = std::max(worst, std::abs(alpha_divergence(phi, psi, ctx.alpha).value -
                                       alpha_via_quasientropy(phi, psi, ctx.alpha)));
    }
    return worst;
  }});

  c.push_back({"quasientropy_p_monotone", 100, 1e-9, std::nullopt, [](CheckContext& ctx) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < ctx.samples; ++i) {
      auto phi = sampling::random_positive(ctx.shape(i), ctx.rng);
      auto psi = sampling::random_positive(ctx.shape(i), ctx.rng);
      const double beta = sampling::uniform(ctx.alpha, 0.95, ctx.rng);
      ModularSpectrum m = modular_spectrum(phi, psi);
      const double pa = ctx.p, pb = order_from_alpha(beta);
      worst = std::max(worst, quasi_entropy(g_p_function(beta), m) / pb -
                                  quasi_entropy(g_p_function(ctx.alpha), m) / pa);
    }
    return worst;
  }});

  c.push_back({"reference_independence", 100, 1e-10, std::nullopt, [](CheckContext& ctx) {
    double worst = 0.0;
    const double q = conjugate_order(ctx.p);
    for (int i = 0; i < ctx.samples; ++i) {
      const auto& s = ctx.shape(i);
      auto u = detail::random_unitaries(s, ctx.rng);
      auto x = sampling::random_lp_vector(s, ctx.p, ctx.rng);
      auto y = sampling::random_lp_vector(s, q, ctx.rng);
      Complex before = pairing(x, y);
      Complex after = pairing(detail::conjugate_by(u, x), detail::conjugate_by(u, y));
      worst = std::max(worst, std::abs(before - after) / (1.0 + std::abs(before)));
      auto omega = sampling::random_functional(s, ctx.rng);
      LpVector moved = alpha_embed(detail::conjugate_by(u, omega), ctx.alpha);
      LpVector expect = detail::conjugate_by(u, alpha_embed(omega, ctx.alpha));
      worst = std::max(worst, schatten_norm(moved - expect) / (1.0 + schatten_norm(expect)));
    }
    return worst;
  }});

  c.push_back({"scaling_inequalities", 100, 1e-9, std::nullopt, [](CheckContext& ctx) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < ctx.samples; ++i) {
      auto phi = sampling::random_positive(ctx.shape(i), ctx.rng);
      auto psi = sampling::random_positive(ctx.shape(i), ctx.rng);
      const double beta = sampling::uniform(ctx.alpha, 0.95, ctx.rng);
      ScalingGaps g = scaling_inequality_gap(phi, psi, ctx.alpha, beta);
      worst = std::max({worst, -g.gap1, -g.gap2});
    }
    return worst;
  }});

  c.push_back({"sphere_convexity", 200, 1e-10, std::nullopt, [](CheckContext& ctx) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < ctx.samples; ++i) {
      auto x = alpha_embed(sampling::random_functional(ctx.shape(i), ctx.rng, true), ctx.alpha);
      auto y = alpha_embed(sampling::random_functional(ctx.shape(i), ctx.rng, true), ctx.alpha);
      worst = std::max(worst, -sphere_convexity_gap(x, y));
    }
    return worst;
  }});

  c.push_back({"sphere_divergence", 100, 1e-10, std::nullopt, [](CheckContext& ctx) {
    double worst = 0.0;
    for (int i = 0; i < ctx.samples; ++i) {
      auto a = sampling::random_functional(ctx.shape(i), ctx.rng, true);
      auto b = i % 2 ? sampling::random_functional(ctx.shape(i), ctx.rng, true)
                     : sampling::random_positive(ctx.shape(i), ctx.rng, true);
      worst = std::max(worst, std::abs(sphere_divergence(a, b, ctx.alpha) -
                                       alpha_divergence(a, b, ctx.alpha).value));
    }
    return worst;
  }});

  c.push_back({"sphere_duality_continuity", 200, 1e-12, std::nullopt, [](CheckContext& ctx) {
    // Empirical modulus of x -> x~ on the radius-p sphere must shrink with
    // the input distance.
    std::vector<double> modulus(5, 0.0);
    for (int i = 0; i < ctx.samples; ++i) {
      const auto& s = ctx.shape(i);
      auto x = alpha_embed(sampling::random_functional(s, ctx.rng, true), ctx.alpha);
      auto h = sampling::random_lp_vector(s, ctx.p, ctx.rng);
      LpVector xt = duality_map(x);
      for (std::size_t k = 0; k < modulus.size(); ++k) {
        const double eps = std::pow(10.0, -static_cast<double>(k));
        LpVector y = x + (eps / schatten_norm(h)) * h;
        y = (ctx.p / schatten_norm(y)) * y;
        modulus[k] = std::max(modulus[k], schatten_norm(duality_map(y) - xt));
      }
    }
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < modulus.size(); ++k) worst = std::max(worst, modulus[k] - modulus[k - 1]);
    return worst;
  }});

  c.push_back({"sphere_tangent", 100, 1e-10, std::nullopt, [](CheckContext& ctx) {
    double worst = 0.0;
    for (int i = 0; i < ctx.samples; ++i) {
      auto x = alpha_embed(sampling::random_functional(ctx.shape(i), ctx.rng, true), ctx.alpha);
      auto y = sampling::random_lp_vector(ctx.shape(i), ctx.p, ctx.rng);
      LpVector py = tangent_project(x, y);
      const double scale = 1.0 + schatten_norm(y);
      worst = std::max({worst, schatten_norm(tangent_project(x, py) - py) / scale,
                        std::abs(pairing(py, duality_map(x)).real()) / scale,
                        schatten_norm(tangent_project(x, x)) / ctx.p});
    }
    return worst;
  }});

  c.push_back({"sublevel_sets", 50, 1e-10, std::nullopt, [](CheckContext& ctx) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < ctx.samples; ++i) {
      const auto& s = ctx.shape(i);
      auto y = sampling::random_lp_vector(s, ctx.p, ctx.rng);
      auto x1 = sampling::random_lp_vector(s, ctx.p, ctx.rng);
      auto x2 = sampling::random_lp_vector(s, ctx.p, ctx.rng);
      const double d = std::max(divergence_Dp(x1, y).value, divergence_Dp(x2, y).value);
      // Convexity: the midpoint stays in U_{y,d}.
      worst = std::max(worst, divergence_Dp(0.5 * (x1 + x2), y).value - d);
      // No half-line: D_p(x + t h, y) leaves every sublevel set and grows
      // monotonically once past t0.
      auto h = sampling::random_lp_vector(s, ctx.p, ctx.rng);
      double t = 1.0, prev = -1.0;
      bool escaped = false;
      for (int k = 0; k < 60; ++k, t *= 2.0) {
        const double v = divergence_Dp(x1 + t * h, y).value;
        if (escaped && v < prev) worst = std::max(worst, 1.0);
        if (v > d) escaped = true;
        prev = v;
        if (escaped && k > 8) break;
      }
      if (!escaped) worst = std::max(worst, 1.0);
    }
    return worst;
  }});

  std::sort(c.begin(), c.end(), [](const CheckSpec& a, const CheckSpec& b) { return a.name < b.name; });
  return c;
}

struct SuiteReport {
  std::vector<ReportRow> rows;
  bool all_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass; });
  }
};

inline SuiteReport run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  SuiteReport report;
  for (const CheckSpec& spec : catalogue()) {
    int samples = spec.default_samples;
    if (cfg.global_samples) samples = *cfg.global_samples;
    if (auto it = cfg.samples.find(spec.name); it != cfg.samples.end()) samples = it->second;
    double tol = spec.default_tolerance;
    if (auto it = cfg.tolerances.find(spec.name); it != cfg.tolerances.end()) tol = it->second;
    if (cfg.global_tolerance) tol = *cfg.global_tolerance;

    std::vector<double> alphas = spec.fixed_alpha ? std::vector<double>{*spec.fixed_alpha} : cfg.alphas;
    for (std::size_t k = 0; k < alphas.size(); ++k) {
      const double alpha = alphas[k];
      CheckContext ctx{Rng(cfg.seed ^ detail::fnv1a(spec.name) ^ (0x9e3779b97f4a7c15ULL * (k + 1))),
                       &cfg.dims, alpha, order_from_alpha(alpha), samples};
      double residual;
      try {
        residual = spec.run(ctx);
      } catch (const std::exception&) {
        residual = std::numeric_limits<double>::infinity();
      }
      report.rows.push_back({spec.name, ctx.p, alpha, residual, std::isfinite(residual) && residual <= tol});
    }
  }
  return report;
}

inline Json row_to_json(const ReportRow& r) {
  return {{"check", r.check}, {"p", r.p}, {"alpha", r.alpha}, {"residual", r.residual}, {"pass", r.pass}};
}

/// JSON-lines: one row per line, then a summary line carrying the only
/// time-dependent field.
inline std::string render(const SuiteReport& report, const std::string& format,
                          const std::string& timestamp) {
  std::ostringstream os;
  std::size_t failed = 0;
  for (const auto& r : report.rows) failed += r.pass ? 0 : 1;
  if (format == "csv") {
    os << "check,p,alpha,residual,pass\n";
    for (const auto& r : report.rows) {
      os << r.check << ',' << io::dump(Json(r.p)) << ',' << io::dump(Json(r.alpha)) << ','
         << io::dump(Json(r.residual)) << ',' << (r.pass ? "true" : "false") << '\n';
    }
    return os.str();
  }
  for (const auto& r : report.rows) os << io::dump(row_to_json(r)) << '\n';
  os << io::dump(Json{{"summary", {{"checks", report.rows.size()}, {"failed", failed}}},
                      {"timestamp", timestamp}})
     << '\n';
  return os.str();
}

inline SuiteConfig config_from_json(const Json& j) {
  return io::detail::decoding("suite config", [&] {
    SuiteConfig cfg;
    if (!j.is_object()) io::detail::fail("config must be an object");
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("dims")) {
      cfg.dims.clear();
      for (const auto& d : j.at("dims")) {
        cfg.dims.push_back(d.is_array() ? AlgebraShape(d.get<std::vector<int>>()) : io::shape_from_json(d));
      }
    }
    if (j.contains("alphas")) cfg.alphas = j.at("alphas").get<std::vector<double>>();
    if (j.contains("sample_counts")) {
      const Json& s = j.at("sample_counts");
      if (s.is_number_integer()) cfg.global_samples = s.get<int>();
      else cfg.samples = s.get<std::map<std::string, int>>();
    }
    if (j.contains("tolerances")) {
      const Json& t = j.at("tolerances");
      if (t.is_number()) cfg.global_tolerance = t.get<double>();
      else cfg.tolerances = t.get<std::map<std::string, double>>();
    }
    if (j.contains("output")) {
      const Json& o = j.at("output");
      if (o.is_string()) {
        cfg.output = o.get<std::string>();
      } else {
        if (o.contains("path")) cfg.output = o.at("path").get<std::string>();
        if (o.contains("format")) cfg.format = o.at("format").get<std::string>();
      }
    }
    if (j.contains("format")) cfg.format = j.at("format").get<std::string>();
    return cfg;
  });
}

}  // namespace ncig::verify
