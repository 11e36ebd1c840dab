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

#include <string>

#include "qspec/operator.hpp"

namespace qspec {

/// Environment triple (A, B, rho) with metadata.
struct BathModel {
  Operator a_op;   // noise operator coupled to the probe sigma_z
  Operator b_op;   // free bath Hamiltonian
  Operator rho0;   // initial bath state
  double a_norm_eff = 0.0;
  std::string label;
  // Optional Hermitian part of b_op that commutes with b_op and rescales every
  // jump operator of the dissipative model by a scalar. Used to split the
  // Lindblad exponential into a large exact unitary part and a small remainder.
  Operator b_commuting;

  [[nodiscard]] Index dim() const noexcept { return a_op.rows(); }
};

/// Throws unless A, B are Hermitian of equal size and rho0 is a density matrix.
void validate_bath(const BathModel& bath, double state_tol = 1e-10);

/// Spectral norm of A P, with P the projector onto the eigenvectors of rho0
/// that carry at least `weight` of the total probability (largest first).
[[nodiscard]] double effective_norm(const BathModel& bath, double weight = 1.0 - 1e-4);

/// Checks Hermiticity, unit trace and positivity of a density matrix.
[[nodiscard]] bool is_density_matrix(const Operator& rho, double tol = 1e-10);

}  // namespace qspec
