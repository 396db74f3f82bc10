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

// Spectral route to quasi-entropies. The relative modular operator
// Delta(A) = rho_phi A rho_psi^{-1} acts on Hilbert-Schmidt space with
// eigenvectors e_i f_j^dagger and eigenvalues lambda_i / mu_j, so
//
//   S_g(phi, psi) = <xi, g(Delta) xi>,  xi = rho_psi^{1/2}
//                 = sum_ij g(lambda_i / mu_j) mu_j |<e_i, f_j>|^2.
//
// Nothing here goes through the L_p machinery; it is the independent side
// of the S_alpha cross-check.

#pragma once

#include <charconv>
#include <functional>
#include <string_view>

#include "ncig/lp.hpp"

namespace ncig {

struct SpectralPair {
  double eigenvalue;
  double weight;
};

struct ModularSpectrum {
  std::vector<SpectralPair> pairs;  // sorted by eigenvalue, clusters merged
  bool restricted = false;          // psi was not faithful; computed on supp(psi)

  double total_weight() const {
    double s = 0.0;
    for (const auto& pr : pairs) s += pr.weight;
    return s;
  }
};

namespace detail {

inline constexpr double kSpectrumWeightFloor = 1e-14;
inline constexpr double kClusterTolerance = 1e-10;

inline std::vector<SpectralPair> merge_clusters(std::vector<SpectralPair> raw) {
  std::sort(raw.begin(), raw.end(),
            [](const SpectralPair& a, const SpectralPair& b) { return a.eigenvalue < b.eigenvalue; });
  std::vector<SpectralPair> out;
  for (const auto& pr : raw) {
    if (!out.empty()) {
      auto& last = out.back();
      const double scale = std::max(std::abs(last.eigenvalue), std::abs(pr.eigenvalue));
      if (std::abs(pr.eigenvalue - last.eigenvalue) <= kClusterTolerance * scale) {
        const double w = last.weight + pr.weight;
        last.eigenvalue = (last.eigenvalue * last.weight + pr.eigenvalue * pr.weight) / w;
        last.weight = w;
        continue;
      }
    }
    out.push_back(pr);
  }
  return out;
}

}  // namespace detail

inline ModularSpectrum modular_spectrum(const NormalFunctional& phi, const NormalFunctional& psi) {
  detail::require_same_shape(phi.shape(), psi.shape());
  require(phi.is_positive() && psi.is_positive(), "modular spectrum needs positive functionals");

  double mu_top = 0.0;
  for (const auto& b : psi.blocks()) {
    mu_top = std::max(mu_top, linalg::eigh(b).values.maxCoeff());
  }
  require(mu_top > 0.0, "modular spectrum needs psi != 0");
  const double clip = kClipTolerance * mu_top;

  ModularSpectrum spec;
  std::vector<SpectralPair> raw;
  for (std::size_t blk = 0; blk < psi.blocks().size(); ++blk) {
    linalg::Eigh fs = linalg::eigh(psi.block(blk));
    std::vector<Eigen::Index> keep;
    for (Eigen::Index j = 0; j < fs.values.size(); ++j) {
      if (fs.values(j) > clip) keep.push_back(j);
    }
    if (keep.size() != static_cast<std::size_t>(fs.values.size())) spec.restricted = true;
    if (keep.empty()) continue;

    linalg::Eigh es = linalg::eigh(phi.block(blk));
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
      const double lambda = std::max(es.values(i), 0.0);
      for (Eigen::Index j : keep) {
        const double overlap = std::norm(es.vectors.col(i).dot(fs.vectors.col(j)));  // |<e_i, f_j>|^2
        const double w = fs.values(j) * overlap;
        if (w < detail::kSpectrumWeightFloor) continue;
        raw.push_back({lambda / fs.values(j), w});
      }
    }
  }
  spec.pairs = detail::merge_clusters(std::move(raw));
  return spec;
}

/// Named scalar function g: [0, inf) -> R used as quasi-entropy generator.
struct ScalarFunction {
  std::string name;
  std::function<double(double)> eval;

  double operator()(double t) const { return eval(t); }
};

/// g_p(t) = p + q t - pq t^{1/p}, p = 2/(1-alpha).
inline ScalarFunction g_p_function(double alpha) {
  const double p = order_from_alpha(alpha);
  const double q = conjugate_order(p);
  return {"g_p:alpha=" + std::to_string(alpha),
          [p, q](double t) { return p + q * t - p * q * std::pow(t, 1.0 / p); }};
}

/// Piecewise-linear interpolation through (t_k, g_k); linear extrapolation
/// from the outermost segments.
inline ScalarFunction tabulated_function(std::vector<double> ts, std::vector<double> gs) {
  require(ts.size() == gs.size() && ts.size() >= 2, "tabulated function needs >= 2 points");
  require(std::is_sorted(ts.begin(), ts.end()) &&
              std::adjacent_find(ts.begin(), ts.end()) == ts.end(),
          "tabulated abscissae must be strictly increasing");
  return {"tabulated", [ts = std::move(ts), gs = std::move(gs)](double t) {
            auto it = std::upper_bound(ts.begin(), ts.end(), t);
            std::size_t k = it == ts.begin()  ? 1
                            : it == ts.end() ? ts.size() - 1
                                             : static_cast<std::size_t>(it - ts.begin());
            const double s = (t - ts[k - 1]) / (ts[k] - ts[k - 1]);
            return gs[k - 1] + s * (gs[k] - gs[k - 1]);
          }};
}

/// Built-ins: "identity", "one", "t_log_t", "g_p:alpha=<value>".
inline ScalarFunction named_function(std::string_view name) {
  if (name == "identity") return {"identity", [](double t) { return t; }};
  if (name == "one") return {"one", [](double) { return 1.0; }};
  if (name == "t_log_t") {
    return {"t_log_t", [](double t) { return t > 0.0 ? t * std::log(t) : 0.0; }};
  }
  constexpr std::string_view prefix = "g_p:alpha=";
  if (name.starts_with(prefix)) {
    std::string_view rest = name.substr(prefix.size());
    double alpha = 0.0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), alpha);
    require(ec == std::errc() && ptr == rest.data() + rest.size(),
            "cannot parse alpha in '" + std::string(name) + "'");
    return g_p_function(alpha);
  }
  throw DomainError("unknown scalar function '" + std::string(name) + "'");
}

inline double quasi_entropy(const ScalarFunction& g, const ModularSpectrum& spectrum) {
  double acc = 0.0;
  for (const auto& pr : spectrum.pairs) acc += g(pr.eigenvalue) * pr.weight;
  return acc;
}

inline double quasi_entropy(const ScalarFunction& g, const NormalFunctional& phi,
                            const NormalFunctional& psi) {
  return quasi_entropy(g, modular_spectrum(phi, psi));
}

/// S^1_{g_p}(phi, psi): the spectral counterpart of S_alpha(phi, psi).
inline double alpha_via_quasientropy(const NormalFunctional& phi, const NormalFunctional& psi,
                                     double alpha) {
  return quasi_entropy(g_p_function(alpha), phi, psi);
}

}  // namespace ncig
