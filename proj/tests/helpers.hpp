/* Copyright 2026 The Spincount Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <random>

#include "spincount/operators.hpp"

namespace spincount::test {

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Largest entrywise deviation after aligning the global phase of `u` to `v`,
// for comparing propagators that are only defined up to a phase.
inline double phase_aligned_diff(const Matrix& u, const Matrix& v) {
  const Matrix overlap = v.adjoint() * u;
  Eigen::Index mi = 0, mj = 0;
  overlap.cwiseAbs().maxCoeff(&mi, &mj);
  const Complex top = overlap(mi, mj);
  if (std::abs(top) < 1e-300) return (u - v).cwiseAbs().maxCoeff();
  return (u - (top / std::abs(top)) * v).cwiseAbs().maxCoeff();
}

inline Matrix random_complex(int dim, std::mt19937& gen) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      m(i, j) = Complex(dist(gen), dist(gen));
    }
  }
  return m;
}

inline Operator random_unitary(int dim, std::mt19937& gen) {
  Eigen::HouseholderQR<Matrix> qr(random_complex(dim, gen));
  Matrix q = qr.householderQ();
  return Operator(std::move(q));
}

inline Operator random_hermitian(int dim, std::mt19937& gen) {
  Matrix a = random_complex(dim, gen);
  return Operator(Matrix(0.5 * (a + a.adjoint())));
}

inline DensityMatrix random_density(int dim, std::mt19937& gen) {
  Matrix a = random_complex(dim, gen);
  Matrix p = a * a.adjoint();
  return DensityMatrix(Matrix(p / p.trace().real()));
}

}  // namespace spincount::test
