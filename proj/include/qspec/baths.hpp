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

// Spin-boson and central-spin environments, and Lindblad free evolution.

#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include "qspec/bath_model.hpp"
#include "qspec/channels.hpp"

namespace qspec {

// ---------------------------------------------------------------- units
// Internal unit system: time in microseconds, angular frequency in rad/us.

/// 13C gyromagnetic ratio, gamma_n / 2 pi in MHz/T (CODATA-derived value).
inline constexpr double kGamma13CMHzPerTesla = 10.705;

/// Larmor angular frequency (rad/us) of 13C in a field given in tesla.
[[nodiscard]] double larmor_13c(double tesla);

/// (mu0 / 4 pi) gamma_n^2 hbar / r^3 for two 13C spins r angstrom apart, in rad/us.
[[nodiscard]] double dipolar_prefactor_13c(double r_angstrom);

/// Cyclic frequency in kHz to rad/us.
[[nodiscard]] constexpr double khz_to_rad_per_us(double khz) {
  return 2.0 * std::numbers::pi * khz * 1e-3;
}

// ---------------------------------------------------------------- qubit

/// A = a sigma_x, B = b sigma_z, rho = I / 2.
[[nodiscard]] BathModel qubit_bath(double a, double b);

// ----------------------------------------------------------- spin-boson

struct SpinBosonSpec {
  double alpha = 0.0;
  double omega_max = 0.0;
  int n_modes = 0;
  double beta = 1.0;
  int n_max = 0;             // Fock levels per mode; 0 selects by the tail rule
  double tail_tolerance = 1e-4;
  int guard_levels = 2;
  std::function<double(double)> spectral_density;  // J(omega); empty means alpha * omega
  // Measurement back-action adds g^2 tau1^2 quanta per cycle; the truncation
  // budgets for n_cycles of it. Zero cycles means thermal weight only.
  double tau1 = 0.0;
  int n_cycles = 0;
};

struct BosonMode {
  double omega = 0.0;
  double coupling = 0.0;   // g_l
  double occupation = 0.0; // untruncated thermal n_l
  BathModel bath;          // A = g (b + b^dag), B = omega b^dag b, thermal rho
};

struct SpinBosonBath {
  SpinBosonSpec spec;
  std::vector<BosonMode> modes;
};

/// Smallest n with thermal weight beyond level n, e^{-beta omega n}, <= tol.
[[nodiscard]] Index thermal_levels_needed(double beta, double omega, double tol);

/// Smallest n with (m / (m + 1))^n <= tol: the tail of a thermal-like
/// distribution of mean occupation m.
[[nodiscard]] Index occupation_levels_needed(double mean_occupation, double tol);

/// Bose occupation 1 / (e^{beta omega} - 1).
[[nodiscard]] double bose_occupation(double beta, double omega);

/// One truncated mode.
[[nodiscard]] BathModel boson_mode_bath(double omega, double coupling, double beta, Index levels);

/// Per-mode factorized bath. Throws TruncationInsufficient if an explicit
/// n_max leaves more than tail_tolerance thermal weight outside.
[[nodiscard]] SpinBosonBath build_spin_boson(const SpinBosonSpec& spec);

/// Full tensor-product bath of all modes; DimensionTooLarge above max_dim.
[[nodiscard]] BathModel spin_boson_tensor_bath(const SpinBosonBath& bath, Index max_dim = 4096);

/// Measurement part of the RIM channel of one mode from the displacement
/// operator D = (g / i omega)(b^dag delta - b delta^*), delta = e^{i omega tau1} - 1:
/// U_B(tau1) cos(D (x) I - I (x) D^T). Built on `levels` Fock levels.
[[nodiscard]] SuperOperator exact_boson_channel(double omega, double coupling, Index levels,
                                                const RimConfig& cfg);

// --------------------------------------------------------- central spin

enum class ProbeSubspace { PlusMinusOne, ZeroMinusOne };

struct CentralSpinSpec {
  std::vector<Eigen::Vector3d> hyperfine;   // rad/us
  std::vector<Eigen::Vector3d> positions;   // angstrom, optional
  std::optional<Eigen::MatrixXd> coupling;  // explicit secular D_jk in rad/us, optional
  double larmor = 0.0;                      // omega_0 in rad/us
  ProbeSubspace subspace = ProbeSubspace::PlusMinusOne;
};

inline constexpr int kMaxCentralSpins = 6;

/// Secular couplings D'_jk (1 - 3 cos^2 theta_jk) with the field along z.
[[nodiscard]] Eigen::MatrixXd dipolar_couplings(const std::vector<Eigen::Vector3d>& positions);

/// ms = +-1 subspace: A = sum h_z I_z, B = -w0 sum I_z + D terms.
/// ms = 0, -1 subspace: A = -1/2 sum h.I, B = -1/2 sum (h.I + 2 w0 I_z) + D terms.
/// rho = maximally mixed.
[[nodiscard]] BathModel build_central_spin(const CentralSpinSpec& spec);

/// 1/2 |h + 2 w0 z|
[[nodiscard]] double effective_larmor(const Eigen::Vector3d& h, double larmor);

/// |h_perp|^2 relative to the effective field h + 2 w0 z.
[[nodiscard]] double transverse_hyperfine_sq(const Eigen::Vector3d& h, double larmor);

// ------------------------------------------------------------ dissipation

struct DissipationSpec {
  double gamma1 = 0.0;
  double gamma_phi = 0.0;
};

/// Lindblad generator with jumps sqrt(G1) sigma_k^- and sqrt(Gphi) sigma_k^z on
/// each spin-1/2 site of the bath.
[[nodiscard]] Eigen::MatrixXcd lindblad_generator(const BathModel& bath,
                                                  const DissipationSpec& spec);

/// exp(tau2 L). When bath.b_commuting is set and verified to commute with B
/// and to rescale every jump operator, that part is split off and applied as
/// an exact unitary; the remainder goes through scaling and squaring.
[[nodiscard]] SuperOperator dissipative_free_evolution(const BathModel& bath,
                                                       const DissipationSpec& spec, double tau2);

}  // namespace qspec
