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

#include "support.hpp"

using namespace ncig;
using namespace ncig::test;

TEST_CASE("identity and pinching") {
  Rng rng(91);
  for (const auto& s : shapes()) {
    NormalFunctional w = sampling::random_functional(s, rng);
    NormalFunctional out = apply_predual(channels::identity(s), w);
    for (std::size_t b = 0; b < s.block_count(); ++b) CHECK(max_abs(out.block(b) - w.block(b)) == 0.0);
  }
  NormalFunctional w = single(mat({{0.5, 0.3}, {0.3, 0.5}}));
  CHECK(max_abs(apply_predual(channels::pinching(AlgebraShape{2}), w).block(0) - diag({0.5, 0.5})) <= 1e-15);
}

TEST_CASE("channel validity") {
  Rng rng(93);
  ChannelValidity v = validate_channel(channels::identity(AlgebraShape{2, 1}));
  CHECK(v.trace_preserving);
  CHECK(v.completely_positive);

  KrausChannel pin = channels::pinching(AlgebraShape{3});
  std::vector<Matrix> doubled;
  for (const auto& k : pin.kraus()) doubled.push_back(2.0 * k);
  v = validate_channel(KrausChannel(pin.in_shape(), pin.out_shape(), doubled));
  CHECK_FALSE(v.trace_preserving);
  CHECK(v.completely_positive);

  for (const auto& in : shapes()) {
    for (const auto& out : shapes()) {
      v = validate_channel(channels::random(in, out, 2, rng));
      CHECK(v.trace_preserving);
      CHECK(v.completely_positive);
    }
  }
  CHECK(validate_channel(channels::partial_trace(2, 3)).trace_preserving);
  CHECK_THROWS_AS(KrausChannel(AlgebraShape{2}, AlgebraShape{3}, {Matrix::Identity(2, 2)}), ShapeMismatch);
}

TEST_CASE("random channels preserve positivity and trace") {
  Rng rng(95);
  for (const auto& in : shapes()) {
    for (const auto& out : shapes()) {
      KrausChannel ch = channels::random(in, out, 2 + static_cast<int>(in.total_dim() % 3), rng);
      NormalFunctional w = sampling::random_positive(in, rng);
      NormalFunctional r = apply_predual(ch, w);
      CHECK(r.is_positive());
      CHECK_THAT(r.total().real(), WithinAbs(w.total().real(), 1e-10));
      CHECK(std::abs(r.total().imag()) <= 1e-12);
    }
  }
}

TEST_CASE("partial trace and classical channels") {
  Rng rng(97);
  NormalFunctional w = sampling::random_positive(AlgebraShape{6}, rng);
  NormalFunctional r = apply_predual(channels::partial_trace(2, 3), w);
  Matrix expect = Matrix::Zero(2, 2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int j = 0; j < 3; ++j) expect(a, b) += w.block(0)(a * 3 + j, b * 3 + j);
    }
  }
  CHECK(max_abs(r.block(0) - expect) <= 1e-14);

  Eigen::MatrixXd p(2, 3);
  p << 0.2, 1.0, 0.5,
       0.8, 0.0, 0.5;
  KrausChannel c = channels::stochastic_matrix(p);
  CHECK(validate_channel(c).trace_preserving);
  NormalFunctional x = classical({0.1, 0.3, 0.6});
  NormalFunctional px = apply_predual(c, x);
  CHECK_THAT(px.block(0)(0, 0).real(), WithinAbs(0.02 + 0.3 + 0.3, 1e-15));
  CHECK_THAT(px.block(1)(0, 0).real(), WithinAbs(0.08 + 0.3, 1e-15));
  CHECK_THROWS_AS(channels::stochastic_matrix(-p), DomainError);
}

TEST_CASE("monotonicity") {
  Rng rng(99);
  NormalFunctional phi = sampling::random_positive(AlgebraShape{2, 2}, rng);
  NormalFunctional psi = sampling::random_positive(AlgebraShape{2, 2}, rng);
  CHECK(std::abs(monotonicity_gap(channels::identity(AlgebraShape{2, 2}), phi, psi, 0.3)) <= 1e-12);
  NormalFunctional d1 = single(diag({0.2, 0.5, 0.3})), d2 = single(diag({0.6, 0.1, 0.3}));
  CHECK(std::abs(monotonicity_gap(channels::pinching(AlgebraShape{3}), d1, d2, -0.4)) <= 1e-12);

  int cases = 0;
  for (int i = 0; i < 200; ++i) {
    const auto& in = shapes()[static_cast<std::size_t>(i) % shapes().size()];
    const auto& out = shapes()[static_cast<std::size_t>(i / 5) % shapes().size()];
    KrausChannel ch = channels::random(in, out, 2 + i % 3, rng);
    NormalFunctional a = sampling::random_positive(in, rng);
    NormalFunctional b = sampling::random_positive(in, rng);
    for (double alpha : {-0.5, 0.0, 0.5}) {
      CHECK(monotonicity_gap(ch, a, b, alpha) >= -1e-9);
      ++cases;
    }
  }
  CHECK(cases == 600);
  CHECK_THROWS_AS(monotonicity_gap(channels::identity(AlgebraShape{2}), single(diag({1, -1})),
                                   single(diag({1, 1})), 0.0),
                  DomainError);
}

TEST_CASE("composition is chainwise monotone") {
  Rng rng(101);
  for (int i = 0; i < 50; ++i) {
    const auto& in = shapes()[static_cast<std::size_t>(i) % shapes().size()];
    const auto& mid = shapes()[static_cast<std::size_t>(i + 2) % shapes().size()];
    const auto& out = shapes()[static_cast<std::size_t>(i + 3) % shapes().size()];
    KrausChannel f1 = channels::random(in, mid, 2, rng);
    KrausChannel f2 = channels::random(mid, out, 3, rng);
    KrausChannel both = channels::compose(f2, f1);
    ChannelValidity v = validate_channel(both);
    CHECK(v.trace_preserving);
    CHECK(v.completely_positive);
    NormalFunctional a = sampling::random_positive(in, rng);
    NormalFunctional b = sampling::random_positive(in, rng);
    // Composition oracle: apply the stages one after another.
    NormalFunctional staged = apply_predual(f2, apply_predual(f1, a));
    NormalFunctional direct = apply_predual(both, a);
    for (std::size_t k = 0; k < out.block_count(); ++k) CHECK(max_abs(staged.block(k) - direct.block(k)) <= 1e-12);
    const double alpha = 0.25;
    const double s0 = alpha_divergence(a, b, alpha).value;
    const double s1 = alpha_divergence(apply_predual(f1, a), apply_predual(f1, b), alpha).value;
    const double s2 = alpha_divergence(direct, apply_predual(both, b), alpha).value;
    CHECK(s1 <= s0 + 1e-9);
    CHECK(s2 <= s1 + 1e-9);
  }
}
