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

#pragma once

#include <catch_amalgamated.hpp>

#include "ncig/io.hpp"

namespace ncig::test {

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

inline Matrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (Complex v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

inline Matrix diag(std::initializer_list<double> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double v : d) m(i, i) = v, ++i;
  return m;
}

inline NormalFunctional single(const Matrix& w) {
  return {AlgebraShape{static_cast<int>(w.rows())}, Blocks{w}};
}

inline LpVector single(const Matrix& x, double p) {
  return {AlgebraShape{static_cast<int>(x.rows())}, p, Blocks{x}};
}

/// Probability vector as a functional on the commutative algebra C^n.
inline NormalFunctional classical(const std::vector<double>& v) {
  Blocks b;
  for (double x : v) b.push_back(Matrix::Constant(1, 1, x));
  return {AlgebraShape(std::vector<int>(v.size(), 1)), std::move(b)};
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline const std::vector<AlgebraShape>& shapes() {
  static const std::vector<AlgebraShape> s{AlgebraShape{2}, AlgebraShape{3}, AlgebraShape{2, 2},
                                           AlgebraShape{1, 3}, AlgebraShape{1, 1, 1}};
  return s;
}

}  // namespace ncig::test
