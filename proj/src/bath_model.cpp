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

#include "qspec/bath_model.hpp"

#include <cmath>

#include "qspec/error.hpp"

namespace qspec {

bool is_density_matrix(const Operator& rho, double tol) {
  if (!is_square(rho) || rho.rows() == 0) return false;
  if (max_abs(rho - rho.adjoint()) > tol) return false;
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > tol) return false;
  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

void validate_bath(const BathModel& bath, double state_tol) {
  require_hermitian(bath.a_op, "A");
  require_hermitian(bath.b_op, "B");
  if (bath.a_op.rows() != bath.b_op.rows() || bath.rho0.rows() != bath.a_op.rows() ||
      bath.rho0.cols() != bath.a_op.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "A, B and rho0 must share one dimension");
  }
  if (!is_density_matrix(bath.rho0, state_tol)) {
    throw Error(ErrorCode::InvalidState, "rho0 is not a density matrix");
  }
}

double effective_norm(const BathModel& bath, double weight) {
  const Index d = bath.dim();
  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (bath.rho0 + bath.rho0.adjoint()));
  // Eigenvalues ascending: accumulate from the top.
  double acc = 0.0;
  Index keep = 0;
  for (Index k = d - 1; k >= 0; --k) {
    acc += std::max(0.0, es.eigenvalues()(k));
    ++keep;
    if (acc >= weight) break;
  }
  if (keep == d) return spectral_norm(bath.a_op);
  // A acting on the occupied sector; P A P would vanish on a single Fock state.
  return spectral_norm(bath.a_op * es.eigenvectors().rightCols(keep));
}

}  // namespace qspec
