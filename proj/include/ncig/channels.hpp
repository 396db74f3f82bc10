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

// Stochastic maps between block algebras, acting on densities:
// W -> sum_k K W K^dagger, followed by compression onto the output blocks.
// Kraus operators are N_out x N_in matrices on the total dimensions; the
// block-diagonal embedding of the input and the output compression (itself a
// pinching channel) keep the map CPTP between the two algebras.

#pragma once

#include "ncig/divergence.hpp"
#include "ncig/sampling.hpp"

namespace ncig {

class KrausChannel {
 public:
  KrausChannel(AlgebraShape in, AlgebraShape out, std::vector<Matrix> kraus)
      : in_(std::move(in)), out_(std::move(out)), kraus_(std::move(kraus)) {
    require(!kraus_.empty(), "channel needs at least one Kraus operator");
    for (const auto& k : kraus_) {
      if (k.rows() != out_.total_dim() || k.cols() != in_.total_dim()) {
        throw ShapeMismatch("Kraus operator must be N_out x N_in");
      }
    }
  }

  const AlgebraShape& in_shape() const { return in_; }
  const AlgebraShape& out_shape() const { return out_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

 private:
  AlgebraShape in_;
  AlgebraShape out_;
  std::vector<Matrix> kraus_;
};

struct ChannelValidity {
  bool trace_preserving;
  bool completely_positive;
};

namespace detail {

inline Matrix block_diagonal(const AlgebraShape& shape, const Blocks& blocks) {
  const int n = shape.total_dim();
  Matrix m = Matrix::Zero(n, n);
  int o = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const int d = shape.block_dim(b);
    m.block(o, o, d, d) = blocks[b];
    o += d;
  }
  return m;
}

inline Blocks diagonal_blocks(const AlgebraShape& shape, const Matrix& m) {
  Blocks out;
  int o = 0;
  for (int d : shape.block_dims()) {
    out.push_back(m.block(o, o, d, d));
    o += d;
  }
  return out;
}

inline Matrix kraus_sum(const std::vector<Matrix>& kraus, const Matrix& w) {
  Matrix r = Matrix::Zero(kraus.front().rows(), kraus.front().rows());
  for (const auto& k : kraus) r += k * w * k.adjoint();
  return r;
}

}  // namespace detail

inline NormalFunctional apply_predual(const KrausChannel& channel, const NormalFunctional& omega) {
  detail::require_same_shape(channel.in_shape(), omega.shape());
  Matrix w = detail::block_diagonal(omega.shape(), omega.blocks());
  Matrix r = detail::kraus_sum(channel.kraus(), w);
  return {channel.out_shape(), detail::diagonal_blocks(channel.out_shape(), r)};
}

/// Trace preservation (compression of sum K^dagger K to the input blocks is
/// the identity) and complete positivity (per-input-block Choi matrix PSD).
inline ChannelValidity validate_channel(const KrausChannel& channel) {
  const auto& in = channel.in_shape();
  const auto& out = channel.out_shape();
  const int n_in = in.total_dim();
  const int n_out = out.total_dim();

  Matrix s = Matrix::Zero(n_in, n_in);
  for (const auto& k : channel.kraus()) s += k.adjoint() * k;
  bool tp = true;
  for (const auto& b : detail::diagonal_blocks(in, s)) {
    tp = tp && (b - Matrix::Identity(b.rows(), b.cols())).cwiseAbs().maxCoeff() <= 1e-10;
  }

  bool cp = true;
  int o = 0;
  for (int d : in.block_dims()) {
    Matrix choi = Matrix::Zero(d * n_out, d * n_out);
    for (int a = 0; a < d; ++a) {
      for (int c = 0; c < d; ++c) {
        Matrix e = Matrix::Zero(n_in, n_in);
        e(o + a, o + c) = 1.0;
        Matrix img = detail::block_diagonal(
            out, detail::diagonal_blocks(out, detail::kraus_sum(channel.kraus(), e)));
        choi.block(a * n_out, c * n_out, n_out, n_out) = img;
      }
    }
    cp = cp && linalg::eigh(choi).values.minCoeff() >= -1e-10;
    o += d;
  }
  return {tp, cp};
}

/// S_alpha(phi, psi) - S_alpha(Phi phi, Phi psi).
inline double monotonicity_gap(const KrausChannel& channel, const NormalFunctional& phi,
                               const NormalFunctional& psi, double alpha) {
  require(phi.is_positive() && psi.is_positive(), "monotonicity needs positive functionals");
  ChannelValidity v = validate_channel(channel);
  require(v.trace_preserving && v.completely_positive, "monotonicity needs a valid channel");
  return alpha_divergence(phi, psi, alpha).value -
         alpha_divergence(apply_predual(channel, phi), apply_predual(channel, psi), alpha).value;
}

namespace channels {

inline KrausChannel identity(const AlgebraShape& shape) {
  const int n = shape.total_dim();
  return {shape, shape, {Matrix::Identity(n, n)}};
}

/// Dephasing in the computational basis: Kraus operators |i><i|.
inline KrausChannel pinching(const AlgebraShape& shape) {
  const int n = shape.total_dim();
  std::vector<Matrix> k;
  for (int i = 0; i < n; ++i) {
    Matrix e = Matrix::Zero(n, n);
    e(i, i) = 1.0;
    k.push_back(std::move(e));
  }
  return {shape, shape, std::move(k)};
}

/// Tr_B on M_{d_keep * d_trace} -> M_{d_keep}, Kraus operators I (x) <j|.
inline KrausChannel partial_trace(int d_keep, int d_trace) {
  std::vector<Matrix> k;
  for (int j = 0; j < d_trace; ++j) {
    Matrix m = Matrix::Zero(d_keep, d_keep * d_trace);
    for (int i = 0; i < d_keep; ++i) m(i, i * d_trace + j) = 1.0;
    k.push_back(std::move(m));
  }
  return {AlgebraShape{d_keep * d_trace}, AlgebraShape{d_keep}, std::move(k)};
}

/// Classical channel between commutative algebras from a column-stochastic
/// matrix P (P(j, i) = probability of i -> j).
inline KrausChannel stochastic_matrix(const Eigen::MatrixXd& transition) {
  const auto m = static_cast<int>(transition.rows());
  const auto n = static_cast<int>(transition.cols());
  require((transition.array() >= 0.0).all(), "transition probabilities must be non-negative");
  std::vector<Matrix> k;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      if (transition(j, i) == 0.0) continue;
      Matrix e = Matrix::Zero(m, n);
      e(j, i) = std::sqrt(transition(j, i));
      k.push_back(std::move(e));
    }
  }
  return {AlgebraShape(std::vector<int>(static_cast<std::size_t>(n), 1)),
          AlgebraShape(std::vector<int>(static_cast<std::size_t>(m), 1)), std::move(k)};
}

/// Stinespring dilation of a Haar-random isometry N_in -> N_out (x) C^env.
inline KrausChannel random(const AlgebraShape& in, const AlgebraShape& out, int env_dim, Rng& rng) {
  const int n_in = in.total_dim();
  const int n_out = out.total_dim();
  int env = std::max(env_dim, 1);
  while (n_out * env < n_in) ++env;
  Matrix u = sampling::haar_unitary(n_out * env, rng);
  std::vector<Matrix> k;
  for (int e = 0; e < env; ++e) {
    Matrix m(n_out, n_in);
    for (int o = 0; o < n_out; ++o) m.row(o) = u.block(o * env + e, 0, 1, n_in);
    k.push_back(std::move(m));
  }
  return {in, out, std::move(k)};
}

/// second o first, including the compression between the two stages.
inline KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
  detail::require_same_shape(first.out_shape(), second.in_shape());
  const auto& mid = first.out_shape();
  std::vector<Matrix> k;
  int o = 0;
  for (int d : mid.block_dims()) {
    Matrix proj = Matrix::Zero(mid.total_dim(), mid.total_dim());
    proj.block(o, o, d, d).setIdentity();
    o += d;
    for (const auto& k2 : second.kraus()) {
      for (const auto& k1 : first.kraus()) k.push_back(k2 * proj * k1);
    }
  }
  return {first.in_shape(), second.out_shape(), std::move(k)};
}

}  // namespace channels
}  // namespace ncig
