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

TEST_CASE("shape validation") {
  CHECK_THROWS_AS(AlgebraShape({}), DomainError);
  CHECK_THROWS_AS(AlgebraShape({2, 0}), DomainError);
  AlgebraShape s{2, 3};
  CHECK(s.total_dim() == 5);
  CHECK_FALSE(s.is_commutative());
  CHECK(AlgebraShape({1, 1}).is_commutative());
  CHECK_THROWS_AS(NormalFunctional(s, Blocks{Matrix::Identity(2, 2)}), ShapeMismatch);
  CHECK_THROWS_AS(NormalFunctional(s, Blocks{Matrix::Identity(2, 2), Matrix::Identity(2, 2)}),
                  ShapeMismatch);
}

TEST_CASE("apply_functional") {
  CHECK_THAT(apply_functional(single(Matrix::Identity(2, 2)),
                              AlgebraElement::identity(AlgebraShape{2})).real(),
             WithinAbs(2.0, 1e-15));
  AlgebraElement a(AlgebraShape{2}, Blocks{diag({0, 1})});
  CHECK(std::abs(apply_functional(single(diag({1, 0})), a)) == 0.0);

  Rng rng(1);
  Matrix w = sampling::complex_gaussian(3, 3, rng);
  Matrix m = sampling::complex_gaussian(3, 3, rng);
  Complex loop = 0.0;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) loop += w(j, k) * m(k, j);
  }
  Complex v = apply_functional(single(w), AlgebraElement(AlgebraShape{3}, Blocks{m}));
  CHECK(std::abs(v - loop) <= 1e-12);
}

TEST_CASE("apply_functional sums over blocks") {
  AlgebraShape s{1, 2};
  NormalFunctional w(s, Blocks{Matrix::Constant(1, 1, 3.0), diag({1, 2})});
  CHECK_THAT(apply_functional(w, AlgebraElement::identity(s)).real(), WithinAbs(6.0, 1e-15));
}

TEST_CASE("polar decomposition of simple functionals") {
  PolarDecomposition id = polar_decompose(single(Matrix::Identity(2, 2)));
  CHECK(max_abs(id.u.block(0) - Matrix::Identity(2, 2)) <= 1e-12);
  CHECK(max_abs(id.rho.block(0) - Matrix::Identity(2, 2)) <= 1e-12);

  Matrix shift = mat({{0, 1}, {0, 0}});
  PolarDecomposition pd = polar_decompose(single(shift));
  CHECK(max_abs(pd.rho.block(0) - diag({0, 1})) <= 1e-12);
  CHECK(max_abs(pd.u.block(0) - shift) <= 1e-12);
  CHECK(max_abs(pd.support.block(0) - diag({0, 1})) <= 1e-12);
}

TEST_CASE("polar decomposition reconstructs random functionals") {
  Rng rng(7);
  for (const auto& s : shapes()) {
    NormalFunctional w = sampling::random_functional(s, rng);
    PolarDecomposition pd = polar_decompose(w);
    CHECK(pd.rho.is_positive());
    for (std::size_t b = 0; b < s.block_count(); ++b) {
      // Oracle: W = U S V^dagger gives rho = V S V^dagger, u = U V^dagger.
      Eigen::JacobiSVD<Matrix> svd(w.block(b), Eigen::ComputeFullU | Eigen::ComputeFullV);
      Matrix rho = svd.matrixV() * svd.singularValues().cast<Complex>().asDiagonal() *
                   svd.matrixV().adjoint();
      CHECK(max_abs(pd.rho.block(b) - rho) <= 1e-10);
      CHECK((pd.u.block(b) * pd.rho.block(b) - w.block(b)).norm() <= 1e-10);
      CHECK(max_abs(pd.u.block(b).adjoint() * pd.u.block(b) - pd.support.block(b)) <= 1e-10);
    }
  }
}

TEST_CASE("polar decomposition of a rank-deficient block") {
  Rng rng(3);
  Matrix v = sampling::complex_gaussian(3, 1, rng);
  Matrix g = sampling::complex_gaussian(3, 1, rng);
  Matrix w = g * v.adjoint();  // rank one
  PolarDecomposition pd = polar_decompose(single(w));
  CHECK((pd.u.block(0) * pd.rho.block(0) - w).norm() <= 1e-10);
  Matrix proj = v * v.adjoint() / v.squaredNorm();
  CHECK(max_abs(pd.support.block(0) - proj) <= 1e-10);
  CHECK_THAT(pd.support.block(0).trace().real(), WithinAbs(1.0, 1e-10));
}

TEST_CASE("support projection") {
  CHECK(max_abs(support_projection(single(diag({0.5, 0}))).block(0) - diag({1, 0})) == 0.0);
  CHECK(max_abs(support_projection(single(Matrix::Identity(2, 2))).block(0) - Matrix::Identity(2, 2)) <=
        1e-12);
  Rng rng(11);
  Matrix v = sampling::complex_gaussian(4, 1, rng);
  v /= v.norm();
  Matrix p = support_projection(single(v * v.adjoint())).block(0);
  CHECK_THAT(p.trace().real(), WithinAbs(1.0, 1e-10));
  CHECK((p * v - v).norm() <= 1e-10);
  CHECK_THROWS_AS(support_projection(single(mat({{0, 1}, {0, 0}}))), DomainError);
}

TEST_CASE("support ignores eigenvalues below the relative clip") {
  Matrix p = support_projection(single(diag({1.0, 1e-13}))).block(0);
  CHECK(max_abs(p - diag({1, 0})) == 0.0);
  p = support_projection(single(diag({1.0, 1e-11}))).block(0);
  CHECK(max_abs(p - Matrix::Identity(2, 2)) <= 1e-15);
}

TEST_CASE("classify functional") {
  FunctionalClass c = classify_functional(single(diag({0.3, 0.7})));
  CHECK(c.hermitian);
  CHECK(c.positive);
  CHECK_THAT(c.norm_1, WithinAbs(1.0, 1e-15));

  c = classify_functional(single(mat({{0, 1}, {0, 0}})));
  CHECK_FALSE(c.hermitian);
  CHECK_FALSE(c.positive);
  CHECK_THAT(c.norm_1, WithinAbs(1.0, 1e-15));

  c = classify_functional(single(diag({1, -1})));
  CHECK(c.hermitian);
  CHECK_FALSE(c.positive);

  Rng rng(5);
  for (const auto& s : shapes()) {
    NormalFunctional h = sampling::random_hermitian_functional(s, rng);
    double abs_eigs = 0.0;
    for (const auto& b : h.blocks()) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(b);
      abs_eigs += es.eigenvalues().cwiseAbs().sum();
    }
    CHECK_THAT(norm_1(h), WithinAbs(abs_eigs, 1e-10));
    CHECK(h.is_hermitian());
  }
}

TEST_CASE("norm_1 is the trace norm dual to the operator norm") {
  Rng rng(9);
  for (const auto& s : shapes()) {
    NormalFunctional w = sampling::random_functional(s, rng);
    PolarDecomposition pd = polar_decompose(w);
    // omega(u^dagger) = ||omega||_1 with ||u^dagger|| = 1.
    CHECK_THAT(apply_functional(w, pd.u.adjoint()).real(), WithinAbs(norm_1(w), 1e-10));
    AlgebraElement a = sampling::random_element(s, rng);
    CHECK(std::abs(apply_functional(w, a)) <= norm_1(w) * a.norm() + 1e-10);
  }
}

TEST_CASE("element and functional arithmetic") {
  AlgebraShape s{2};
  AlgebraElement a(s, Blocks{mat({{1, Complex(0, 2)}, {0, 3}})});
  CHECK(max_abs(a.adjoint().block(0) - mat({{1, 0}, {Complex(0, -2), 3}})) == 0.0);
  CHECK(max_abs((a * AlgebraElement::identity(s)).block(0) - a.block(0)) == 0.0);
  CHECK_THAT(AlgebraElement::identity(s).norm(), WithinAbs(1.0, 1e-15));
  NormalFunctional f = single(diag({1, 2}));
  CHECK_THAT((2.0 * f - f).total().real(), WithinAbs(3.0, 1e-15));
  CHECK(NormalFunctional::zero(s).is_positive());
}
