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

// Noise correlation C(t) and two-point measurement correlations.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qspec/bath_model.hpp"
#include "qspec/channels.hpp"

namespace qspec {

enum class Provenance { Analytic, ExactChannel, WeakApprox, CorrSpectroscopy, MonteCarlo };

[[nodiscard]] std::string_view to_string(Provenance p) noexcept;

/// values[m - 1] holds the sample at lag m, t = m * tau, m = 1..N.
struct CorrelationSeries {
  double tau = 0.0;
  std::vector<double> values;
  Provenance provenance = Provenance::Analytic;
  std::optional<std::uint64_t> n_samples;
  double total_detection_time = 0.0;

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
  [[nodiscard]] double time(std::size_t m) const noexcept { return static_cast<double>(m) * tau; }
};

/// N tau
[[nodiscard]] double weak_detection_time(std::size_t n, double tau);
/// tau + 2 tau + ... + N tau = N (N + 1) tau / 2
[[nodiscard]] double corr_detection_time(std::size_t n, double tau);

/// One term amplitude * damping^(m-1) * cos(omega t + phase). Indices refer
/// to the eigenbasis of B (ascending energies).
struct Mode {
  double omega = 0.0;
  double amplitude = 0.0;
  double phase = 0.0;
  double damping = 1.0;
  Index i = 0;
  Index j = 0;
};

using ModeTable = std::vector<Mode>;

inline constexpr double kModePruneRatio = 1e-14;

/// Terms of C(t) = sum_ij |c_ij| cos(omega_ij t - arg c_ij), with
/// c_ij = A_ji (A rho)_ij and omega_ij = b_i - b_j. Damping set to 1.
[[nodiscard]] ModeTable build_mode_table(const BathModel& bath);

/// Sets damping to 1 + tau1^2 <<ij|L|ij>>, clamped into (0, 1].
[[nodiscard]] ModeTable with_perturbative_damping(ModeTable modes, const BathModel& bath,
                                                  double tau1);

/// Sets damping to |lambda| of the eigenvector matched to each pair.
[[nodiscard]] ModeTable with_exact_damping(ModeTable modes, const SpectralDecomposition& dec,
                                           const BathEigenbasis& eb);

/// C(t) from the mode table at arbitrary times.
[[nodiscard]] std::vector<double> evaluate_modes(const ModeTable& modes,
                                                 const std::vector<double>& times);

/// C(m tau), m = 1..n.
[[nodiscard]] CorrelationSeries analytic_correlation(const BathModel& bath, double tau,
                                                     std::size_t n);

/// Symmetrized 1/2 Tr{rho [A(t)A + A A(t)]} by direct propagation.
[[nodiscard]] double direct_correlation(const BathModel& bath, double t);

enum class ChannelPath { Auto, Spectral, Iterated };

/// <<I| P Phi^{m-1} P |rho>> for m = 1..n on the vectorized channel.
[[nodiscard]] CorrelationSeries exact_channel_correlation(const ConcatenatedChannel& ch,
                                                          const Operator& rho0, std::size_t n,
                                                          ChannelPath path = ChannelPath::Auto);

/// Same quantity evaluated in Hilbert space: X_1 = P(rho), X_{m+1} = Phi(X_m),
/// value Tr(O X_m). Needs O(d^3) per lag instead of O(d^4).
[[nodiscard]] CorrelationSeries exact_cycle_correlation(const RimCycle& cycle,
                                                        const Operator& rho0, std::size_t n);

/// 4 tau1^2 sum amplitude damping^(m-1) cos(m omega tau + phase).
[[nodiscard]] CorrelationSeries weak_correlation(const ModeTable& modes, double tau1, double tau,
                                                 std::size_t n);

/// Two RIMs separated by unitary free evolution over (m - 1) tau.
[[nodiscard]] CorrelationSeries correlation_spectroscopy(const BathModel& bath,
                                                         const RimConfig& cfg, double tau,
                                                         std::size_t n);

/// General form: the first RIM is followed by `first` (its free evolution over
/// tau2), then `step` is applied m - 1 times before the second RIM. Lets the
/// gap carry dissipation.
[[nodiscard]] CorrelationSeries correlation_spectroscopy(const RimCycle& first,
                                                         const FreeEvolver& step,
                                                         const Operator& rho0, std::size_t n);

}  // namespace qspec
