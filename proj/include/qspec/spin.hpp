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

// Spin-1/2 and truncated-boson operator helpers.

#include "qspec/operator.hpp"

namespace qspec {

struct SpinHalf {
  Operator ix, iy, iz;  // spin operators I = sigma / 2
  Operator lower;       // sigma^- = |1><0| in the basis (up, down)
  Operator identity;
};

[[nodiscard]] const SpinHalf& spin_half();

/// Pauli matrices sigma_x, sigma_y, sigma_z.
[[nodiscard]] Operator pauli_x();
[[nodiscard]] Operator pauli_y();
[[nodiscard]] Operator pauli_z();

/// Embeds a single-site operator at `site` of `n_sites` sites of local
/// dimension op.rows(); site 0 is the most significant tensor factor.
[[nodiscard]] Operator embed(const Operator& op, int site, int n_sites);

/// Annihilation operator on Fock levels 0..n_levels-1.
[[nodiscard]] Operator annihilation(Index n_levels);

/// Number operator diag(0, 1, ..., n_levels-1).
[[nodiscard]] Operator number_op(Index n_levels);

}  // namespace qspec
