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

#include "qspec/spin.hpp"

#include <cmath>

#include "qspec/error.hpp"

namespace qspec {

Operator pauli_x() {
  Operator m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Operator pauli_y() {
  Operator m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Operator pauli_z() {
  Operator m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

const SpinHalf& spin_half() {
  static const SpinHalf s = [] {
    SpinHalf out;
    out.ix = 0.5 * pauli_x();
    out.iy = 0.5 * pauli_y();
    out.iz = 0.5 * pauli_z();
    out.lower = Operator::Zero(2, 2);
    out.lower(1, 0) = 1.0;
    out.identity = Operator::Identity(2, 2);
    return out;
  }();
  return s;
}

Operator embed(const Operator& op, int site, int n_sites) {
  if (site < 0 || site >= n_sites) throw Error(ErrorCode::OutOfRange, "site index out of range");
  const Index local = op.rows();
  Operator out = Operator::Identity(1, 1);
  for (int k = 0; k < n_sites; ++k) {
    out = kron(out, k == site ? op : Operator::Identity(local, local));
  }
  return out;
}

Operator annihilation(Index n_levels) {
  if (n_levels < 1) throw Error(ErrorCode::OutOfRange, "need at least one Fock level");
  Operator b = Operator::Zero(n_levels, n_levels);
  for (Index n = 1; n < n_levels; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
  return b;
}

Operator number_op(Index n_levels) {
  Operator n = Operator::Zero(n_levels, n_levels);
  for (Index k = 0; k < n_levels; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

}  // namespace qspec
