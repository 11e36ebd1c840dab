// Copyright 2026 The qspec Authors
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

// Shared helpers for the unit tests: seeded random matrices and small baths.

#include <cmath>
#include <random>

#include "qspec/bath_model.hpp"
#include "qspec/operator.hpp"

namespace qspec::test {

inline Operator random_matrix(Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Operator m(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) m(i, j) = Complex(n(rng), n(rng));
  }
  return m;
}

inline Operator random_hermitian(Index d, std::mt19937_64& rng) {
  const Operator m = random_matrix(d, rng);
  return 0.5 * (m + m.adjoint());
}

inline Operator random_density(Index d, std::mt19937_64& rng) {
  const Operator m = random_matrix(d, rng);
  Operator rho = m * m.adjoint();
  return rho / rho.trace().real();
}

inline Operator random_unitary(Index d, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Operator> qr(random_matrix(d, rng));
  return qr.householderQ();
}

inline double max_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qspec::test
