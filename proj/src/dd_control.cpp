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

#include "qspec/dd_control.hpp"

#include "qspec/error.hpp"

namespace qspec {

FreeEvolver ConditionalEvolver::to_free_evolver() const {
  if (mode == EvolverMode::IdealB) return FreeEvolver::unitary(u_plus);
  return FreeEvolver::conditional(u_plus, u_minus);
}

namespace {

Operator cpmg_branch(const Operator& a, const Operator& b, double r, int n_pulses, double tau2) {
  const double n = static_cast<double>(n_pulses);
  const Operator edge = expm_hermitian(r * a + b, tau2 / (2.0 * n));
  const Operator middle = expm_hermitian(-r * a + b, tau2 / n);
  const Operator block = edge * middle * edge;
  Operator u = Operator::Identity(a.rows(), a.cols());
  for (int k = 0; k < n_pulses / 2; ++k) u = block * u;
  return u;
}

}  // namespace

ConditionalEvolver conditional_propagators(const BathModel& bath, const CpmgConfig& cfg) {
  if (cfg.n_pulses < 0 || cfg.n_pulses % 2 != 0) {
    throw Error(ErrorCode::OddPulseCount, "pulse count must be even and non-negative");
  }
  if (!(cfg.tau2 >= 0.0)) throw Error(ErrorCode::OutOfRange, "tau2 must be non-negative");
  require_hermitian(bath.a_op, "A");
  require_hermitian(bath.b_op, "B");
  ConditionalEvolver ev;
  if (cfg.n_pulses == 0) {
    ev.mode = EvolverMode::FreeConditional;
    ev.u_plus = expm_hermitian(bath.a_op + bath.b_op, cfg.tau2);
    ev.u_minus = expm_hermitian(bath.b_op - bath.a_op, cfg.tau2);
    return ev;
  }
  ev.mode = EvolverMode::Cpmg;
  ev.u_plus = cpmg_branch(bath.a_op, bath.b_op, 1.0, cfg.n_pulses, cfg.tau2);
  ev.u_minus = cpmg_branch(bath.a_op, bath.b_op, -1.0, cfg.n_pulses, cfg.tau2);
  return ev;
}

ConditionalEvolver ideal_b_propagators(const BathModel& bath, double tau2) {
  ConditionalEvolver ev;
  ev.mode = EvolverMode::IdealB;
  ev.u_plus = expm_hermitian(bath.b_op, tau2);
  ev.u_minus = ev.u_plus;
  return ev;
}

Operator trajectory_free_step(const Operator& rho, int r, const ConditionalEvolver& evolver) {
  const Operator& u = r >= 0 ? evolver.u_plus : evolver.u_minus;
  if (u.rows() != rho.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "state and propagator differ in size");
  }
  return u * rho * u.adjoint();
}

}  // namespace qspec
