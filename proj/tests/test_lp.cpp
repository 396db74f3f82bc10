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

namespace {

// Oracle for matrix powers of PSD matrices through Eigen's own solver.
Matrix psd_pow(const Matrix& m, double e) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  Eigen::VectorXd v = es.eigenvalues().cwiseMax(0.0).array().pow(e);
  return es.eigenvectors() * v.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

const double kOrders[] = {1.5, 2.0, 3.0, 4.0};

}  // namespace

TEST_CASE("order helpers") {
  CHECK(order_from_alpha(0.0) == 2.0);
  CHECK_THAT(order_from_alpha(1.0 / 3.0), WithinRel(3.0, 1e-15));
  CHECK(conjugate_order(3.0) == 1.5);
  CHECK_THROWS_WITH(order_from_alpha(1.5), "alpha out of (-1,1)");
  CHECK_THROWS_AS(order_from_alpha(-1.0), DomainError);
  CHECK_THROWS_AS(LpVector::zero(AlgebraShape{2}, 1.0), DomainError);
  CHECK_THROWS_AS(LpVector::zero(AlgebraShape{2}, std::nan("")), DomainError);
}

TEST_CASE("alpha embedding closed forms") {
  Rng rng(2);
  NormalFunctional rho = sampling::random_positive(AlgebraShape{3}, rng);
  LpVector x = alpha_embed(rho, 0.0);
  CHECK(x.order() == 2.0);
  CHECK(max_abs(x.block(0) - 2.0 * psd_pow(rho.block(0), 0.5)) <= 1e-12);
  CHECK(max_abs(alpha_unembed(x, 0.0).block(0) - rho.block(0)) <= 1e-12);

  LpVector six = alpha_embed(single(Matrix::Constant(1, 1, 8.0)), 1.0 / 3.0);
  CHECK_THAT(six.block(0)(0, 0).real(), WithinAbs(6.0, 1e-12));
  CHECK_THAT(alpha_unembed(single(Matrix::Constant(1, 1, 6.0), 3.0), 1.0 / 3.0).block(0)(0, 0).real(),
             WithinAbs(8.0, 1e-12));

  CHECK(alpha_embed(NormalFunctional::zero(AlgebraShape{2, 1}), 0.5).is_zero());
  CHECK_THROWS_AS(alpha_unembed(six, 0.0), DomainError);
}

TEST_CASE("alpha embedding of a non-positive functional uses the polar part") {
  Rng rng(4);
  NormalFunctional w = sampling::random_functional(AlgebraShape{3}, rng);
  PolarDecomposition pd = polar_decompose(w);
  for (double alpha : {-0.5, 0.0, 0.5}) {
    const double p = order_from_alpha(alpha);
    Matrix expect = p * pd.u.block(0) * psd_pow(pd.rho.block(0), 1.0 / p);
    CHECK(max_abs(alpha_embed(w, alpha).block(0) - expect) <= 1e-10);
  }
}

TEST_CASE("embedding round trip") {
  Rng rng(6);
  for (double alpha : {-0.5, 0.0, 0.5}) {
    for (const auto& s : shapes()) {
      NormalFunctional w = sampling::random_functional(s, rng);
      NormalFunctional back = alpha_unembed(alpha_embed(w, alpha), alpha);
      for (std::size_t b = 0; b < s.block_count(); ++b) CHECK(max_abs(back.block(b) - w.block(b)) <= 1e-10);
    }
  }
}

TEST_CASE("schatten norms") {
  CHECK_THAT(schatten_norm(single(Matrix::Identity(2, 2), 2.0)), WithinAbs(std::sqrt(2.0), 1e-15));
  Blocks d{diag({3, 4})};
  CHECK_THAT(schatten_norm(d, 1.0), WithinAbs(7.0, 1e-14));
  Rng rng(8);
  for (const auto& s : shapes()) {
    LpVector x = sampling::random_lp_vector(s, 2.0, rng);
    double fro = 0.0;
    for (const auto& b : x.blocks()) fro += b.squaredNorm();
    CHECK_THAT(schatten_norm(x), WithinAbs(std::sqrt(fro), 1e-12));
  }
  // Unitary invariance.
  LpVector x = sampling::random_lp_vector(AlgebraShape{3}, 3.0, rng);
  Matrix u = sampling::haar_unitary(3, rng);
  CHECK_THAT(schatten_norm(single(u * x.block(0), 3.0)), WithinRel(schatten_norm(x), 1e-12));
}

TEST_CASE("pairing") {
  CHECK_THAT(pairing(single(Matrix::Identity(2, 2), 2.0), single(Matrix::Identity(2, 2), 2.0)).real(),
             WithinAbs(2.0, 1e-15));
  CHECK_THROWS_AS(pairing(single(Matrix::Identity(2, 2), 3.0), single(Matrix::Identity(2, 2), 2.0)),
                  DomainError);

  const std::vector<double> r{0.2, 0.5, 1.3}, v{0.7, 0.1, 0.4};
  for (double alpha : {-0.6, 0.0, 0.5}) {
    const double p = order_from_alpha(alpha), q = conjugate_order(p);
    Complex got = pairing(alpha_embed(classical(r), alpha), alpha_embed(classical(v), -alpha));
    double expect = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) expect += std::pow(r[i], 1 / p) * std::pow(v[i], 1 / q);
    CHECK_THAT(got.real(), WithinAbs(p * q * expect, 1e-12));
    CHECK(std::abs(got.imag()) <= 1e-15);
  }

  Rng rng(10);
  for (double p : kOrders) {
    const double q = conjugate_order(p);
    for (int i = 0; i < 500; ++i) {
      const auto& s = shapes()[static_cast<std::size_t>(i) % shapes().size()];
      LpVector x = sampling::random_lp_vector(s, p, rng);
      LpVector y = sampling::random_lp_vector(s, q, rng);
      CHECK(std::abs(pairing(x, y)) <= schatten_norm(x) * schatten_norm(y) * (1 + 1e-12));
    }
  }
}

TEST_CASE("bilinear form and conjugate-linear pairing agree up to adjoint") {
  Rng rng(12);
  LpVector x = sampling::random_lp_vector(AlgebraShape{2, 3}, 3.0, rng);
  LpVector y = sampling::random_lp_vector(AlgebraShape{2, 3}, 1.5, rng);
  Blocks xa;
  for (const auto& b : x.blocks()) xa.push_back(b.adjoint());
  CHECK(std::abs(bilinear(LpVector(x.shape(), 3.0, xa), y) - pairing(x, y)) <= 1e-12);
}

TEST_CASE("holder products") {
  LpVector a = single(diag({2, 0}), 2.0);
  LpVector b = single(diag({3, 1}), 2.0);
  std::vector<LpVector> ab{a, b};
  ProductElement t = holder_product(ab);
  CHECK(t.order == 1.0);
  CHECK(max_abs(t.blocks[0] - diag({6, 0})) == 0.0);
  CHECK_THAT(t.norm(), WithinAbs(6.0, 1e-14));
  CHECK(t.norm() <= schatten_norm(a) * schatten_norm(b));

  Rng rng(14);
  LpVector x = sampling::random_lp_vector(AlgebraShape{3}, 4.0, rng);
  std::vector<LpVector> with_id{LpVector(AlgebraShape{3}, 4.0, Blocks{Matrix::Identity(3, 3)}), x};
  CHECK(max_abs(holder_product(with_id).blocks[0] - x.block(0)) == 0.0);
  CHECK_THAT(holder_product(with_id).order, WithinRel(2.0, 1e-15));

  for (double p : kOrders) {
    const double q = conjugate_order(p);
    for (const auto& s : shapes()) {
      std::vector<LpVector> f{sampling::random_lp_vector(s, p, rng), sampling::random_lp_vector(s, q, rng)};
      std::vector<LpVector> g{f[1], f[0]};
      CHECK(std::abs(holder_product(f).trace() - holder_product(g).trace()) <= 1e-12);
      CHECK(std::abs(holder_product(f).trace() - bilinear(f[0], f[1])) <= 1e-12);
      CHECK(holder_product(f).norm() <= schatten_norm(f[0]) * schatten_norm(f[1]) * (1 + 1e-12));
    }
  }
  std::vector<LpVector> too_many{x, x, x, x, x};
  CHECK_THROWS_AS(holder_product(too_many), DomainError);
}

TEST_CASE("duality map closed forms") {
  for (double p : kOrders) {
    const double q = conjugate_order(p);
    LpVector x = single(p * Matrix::Identity(3, 3), p);
    LpVector xt = duality_map(x);
    CHECK(xt.order() == q);
    CHECK(max_abs(xt.block(0) - q * Matrix::Identity(3, 3)) <= 1e-12);
  }
  LpVector six = single(Matrix::Constant(1, 1, 6.0), 3.0);
  LpVector t = duality_map(six);
  CHECK(t.order() == 1.5);
  CHECK_THAT(t.block(0)(0, 0).real(), WithinAbs(6.0, 1e-12));
  CHECK_THAT(pairing(six, t).real(), WithinAbs(36.0, 1e-12));
  CHECK_THAT(3.0 * 1.5 * scaled_power_sum(six), WithinAbs(36.0, 1e-12));
  CHECK(duality_map(LpVector::zero(AlgebraShape{2}, 3.0)).is_zero());
}

TEST_CASE("duality map carries l_alpha to l_-alpha") {
  Rng rng(16);
  for (double alpha : {-0.6, 0.0, 1.0 / 3.0, 0.6}) {
    for (const auto& s : shapes()) {
      NormalFunctional w = sampling::random_functional(s, rng);
      LpVector d = duality_map(alpha_embed(w, alpha));
      LpVector e = alpha_embed(w, -alpha);
      for (std::size_t b = 0; b < s.block_count(); ++b) CHECK(max_abs(d.block(b) - e.block(b)) <= 1e-10);
    }
  }
}

TEST_CASE("duality identities on random vectors") {
  Rng rng(18);
  for (double p : kOrders) {
    for (int i = 0; i < 100; ++i) {
      const auto& s = shapes()[static_cast<std::size_t>(i) % shapes().size()];
      LpVector x = sampling::random_lp_vector(s, p, rng);
      DualityReport r = duality_report(x);
      const double mag = 1.0 + p * conjugate_order(p) * scaled_power_sum(x);
      CHECK(r.norm_defect <= 1e-9 * mag);
      CHECK(r.pairing_defect <= 1e-9 * mag);
      CHECK(schatten_norm(duality_map(duality_map(x)) - x) <= 1e-9 * (1 + schatten_norm(x)));
      CHECK(legendre_defect(x) <= 1e-10 * (1 + potential(x)));
    }
  }
}

TEST_CASE("norming functional") {
  LpVector six = single(Matrix::Constant(1, 1, 6.0), 3.0);
  CHECK_THAT(norming_functional(six).block(0)(0, 0).real(), WithinAbs(1.0, 1e-12));

  for (double p : kOrders) {
    const double q = conjugate_order(p);
    const int n = 3;
    LpVector x = single(p * Matrix::Identity(n, n), p);
    LpVector v = norming_functional(x);
    Matrix expect = Matrix::Identity(n, n) / std::pow(n, 1.0 / q);
    CHECK(max_abs(v.block(0) - expect) <= 1e-12);
    CHECK_THAT(pairing((1.0 / schatten_norm(x)) * x, v).real(), WithinAbs(1.0, 1e-12));
  }

  Rng rng(20);
  for (int i = 0; i < 200; ++i) {
    const double p = kOrders[i % 4];
    LpVector x = sampling::random_lp_vector(shapes()[static_cast<std::size_t>(i) % shapes().size()], p, rng);
    LpVector v = norming_functional(x);
    CHECK_THAT(schatten_norm(v), WithinAbs(1.0, 1e-10));
    CHECK_THAT(pairing((1.0 / schatten_norm(x)) * x, v).real(), WithinAbs(1.0, 1e-10));
  }
  CHECK_THROWS_AS(norming_functional(LpVector::zero(AlgebraShape{2}, 2.0)), DomainError);
}

TEST_CASE("potential closed forms") {
  LpVector six = single(Matrix::Constant(1, 1, 6.0), 3.0);
  CHECK_THAT(potential(six), WithinAbs(12.0, 1e-12));
  CHECK_THAT(potential(duality_map(six)), WithinAbs(24.0, 1e-12));
  CHECK(potential(LpVector::zero(AlgebraShape{2, 2}, 3.0)) == 0.0);

  Rng rng(22);
  NormalFunctional rho = sampling::random_positive(AlgebraShape{2, 3}, rng);
  CHECK_THAT(potential(alpha_embed(rho, 0.0)), WithinRel(2.0 * rho.total().real(), 1e-12));
}

TEST_CASE("potential derivative") {
  Rng rng(24);
  LpVector y = sampling::random_lp_vector(AlgebraShape{3}, 3.0, rng);
  CHECK(potential_directional_derivative(LpVector::zero(AlgebraShape{3}, 3.0), y) == 0.0);

  constexpr double h = 1e-5;
  for (double p : kOrders) {
    for (int i = 0; i < 100; ++i) {
      const auto& s = shapes()[static_cast<std::size_t>(i) % shapes().size()];
      LpVector x = sampling::random_lp_vector(s, p, rng);
      LpVector d = sampling::random_lp_vector(s, p, rng);
      const double got = potential_directional_derivative(x, d);
      const double fd = (potential(x + h * d) - potential(x - h * d)) / (2 * h);
      CHECK(std::abs(got - fd) <= 1e-5 * std::max(std::abs(got), 1.0));
    }
    LpVector x = sampling::random_lp_vector(AlgebraShape{2}, p, rng);
    CHECK_THAT(potential_directional_derivative(x, x),
               WithinRel(p * conjugate_order(p) * scaled_power_sum(x), 1e-12));
  }
}

TEST_CASE("incompatible operands are rejected") {
  LpVector a = LpVector::zero(AlgebraShape{2}, 3.0);
  LpVector b = LpVector::zero(AlgebraShape{3}, 3.0);
  LpVector c = LpVector::zero(AlgebraShape{2}, 2.0);
  CHECK_THROWS_AS(a + b, ShapeMismatch);
  CHECK_THROWS_AS(a - c, DomainError);
  CHECK_THROWS_AS(potential_directional_derivative(a, c), DomainError);
}
