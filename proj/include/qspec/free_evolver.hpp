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

#include <array>
#include <optional>

#include "qspec/operator.hpp"

namespace qspec {

/// Bath evolution between two measurements. Either one unitary, a pair of
/// outcome-conditioned unitaries (index 0 for outcome a = 0, i.e. r = +1), or
/// a general superoperator such as a Lindblad propagator.
class FreeEvolver {
 public:
  enum class Kind { Unitary, Conditional, Superoperator };

  static FreeEvolver unitary(Operator u);
  static FreeEvolver conditional(Operator u_plus, Operator u_minus);
  static FreeEvolver superoperator(SuperOperator s);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] Index dim() const noexcept { return dim_; }
  [[nodiscard]] bool outcome_dependent() const noexcept { return kind_ == Kind::Conditional; }

  /// Applies the branch selected by outcome a in {0, 1}.
  [[nodiscard]] Operator apply(const Operator& x, int a) const;
  /// In-place variant; `work` is scratch of the same size.
  void apply_inplace(Operator& x, int a, Operator& work) const;

  [[nodiscard]] SuperOperator branch_superop(int a) const;

 private:
  Kind kind_ = Kind::Unitary;
  Index dim_ = 0;
  std::array<Operator, 2> u_;
  // Set when the corresponding unitary is diagonal.
  std::array<std::optional<Eigen::VectorXcd>, 2> diag_;
  SuperOperator s_;
};

}  // namespace qspec
