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

// Probe-bath coupling during free evolution and CPMG decoupling of it.

#include "qspec/bath_model.hpp"
#include "qspec/free_evolver.hpp"

namespace qspec {

enum class EvolverMode { FreeConditional, Cpmg, IdealB };

struct CpmgConfig {
  int n_pulses = 0;  // even; 0 means no pulses
  double tau2 = 0.0;
};

struct ConditionalEvolver {
  Operator u_plus;   // outcome r = +1 (a = 0)
  Operator u_minus;  // outcome r = -1 (a = 1)
  EvolverMode mode = EvolverMode::FreeConditional;

  [[nodiscard]] FreeEvolver to_free_evolver() const;
};

/// n_pulses = 0: U_r = e^{-i(rA+B)tau2}. n_pulses >= 2: the CPMG product
/// (e^{-i(rA+B)tau2/2N} e^{-i(-rA+B)tau2/N} e^{-i(rA+B)tau2/2N})^{N/2}.
[[nodiscard]] ConditionalEvolver conditional_propagators(const BathModel& bath,
                                                         const CpmgConfig& cfg);

/// Both branches e^{-iB tau2}.
[[nodiscard]] ConditionalEvolver ideal_b_propagators(const BathModel& bath, double tau2);

/// rho -> U_r rho U_r^dagger for r = +1 or -1.
[[nodiscard]] Operator trajectory_free_step(const Operator& rho, int r,
                                            const ConditionalEvolver& evolver);

}  // namespace qspec
