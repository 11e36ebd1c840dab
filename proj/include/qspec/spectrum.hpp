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

// One-sided discrete spectrum of a correlation series and its analysis.
//
// Normalization: S(w_k) = tau * sum_{m=1}^{N} e^{i w_k m tau} C(m tau) on the
// grid w_k = k pi / (N tau), k = 0..N. With this constant the one-sided
// Parseval identity reads
//   2 sum_k |S_k|^2 - |S_0|^2 - |S_N|^2 = 2 N tau^2 sum_m |C_m|^2.

#include <optional>
#include <vector>

#include "qspec/bath_model.hpp"
#include "qspec/correlation.hpp"

namespace qspec {

enum class Window { None, Hann };

struct Spectrum {
  double tau = 0.0;
  std::size_t n = 0;  // number of correlation samples
  std::vector<double> frequencies;
  std::vector<Complex> amplitudes;
  double resolution = 0.0;  // pi / (N tau)

  [[nodiscard]] std::vector<double> magnitude() const;
  [[nodiscard]] std::vector<double> real_part() const;
};

[[nodiscard]] Spectrum reconstruct_spectrum(const CorrelationSeries& series,
                                            Window window = Window::None);

/// Grid-only DFT of raw samples (used for kernels and synthetic data).
[[nodiscard]] Spectrum dft_samples(const std::vector<double>& values, double tau,
                                   Window window = Window::None);

/// Spectrum divided by a constant (e.g. 4 tau1^2).
[[nodiscard]] Spectrum scaled(Spectrum s, double factor);

struct PeakAnnotation {
  double center = 0.0;
  double height = 0.0;  // parabolic vertex value
  double fwhm = 0.0;
  std::size_t bin = 0;
  std::optional<std::size_t> matched_mode;
};

enum class PeakQuantity { Magnitude, RealPart };

/// Local maxima above threshold * max. Plateaus resolve to the lowest bin.
[[nodiscard]] std::vector<PeakAnnotation> find_peaks(const Spectrum& spec, double threshold,
                                                     PeakQuantity quantity =
                                                         PeakQuantity::Magnitude);

/// Sets matched_mode to the index of the nearest frequency within `tolerance`.
void match_peaks(std::vector<PeakAnnotation>& peaks, const std::vector<double>& mode_frequencies,
                 double tolerance);

/// || |S_ref| - |S_est| ||_2 / || |S_ref| ||_2
[[nodiscard]] double estimation_error(const Spectrum& ref, const Spectrum& est);

/// |((w + pi/tau) mod 2 pi/tau) - pi/tau|
[[nodiscard]] double fold_frequency(double omega, double tau);

struct AliasedMode {
  double omega = 0.0;
  double folded = 0.0;
};

struct SamplingDiagnostic {
  bool pass = true;
  double nyquist = 0.0;        // pi / tau
  double max_frequency = 0.0;  // largest |w_ij| carrying amplitude
  double two_b_norm = 0.0;     // 2 ||B||, the a priori bound
  std::vector<AliasedMode> aliased;
};

/// Checks every populated transition frequency against pi / tau.
[[nodiscard]] SamplingDiagnostic validate_sampling(const BathModel& bath, double tau);
[[nodiscard]] SamplingDiagnostic validate_frequencies(const std::vector<double>& omegas,
                                                      double tau);

/// DFT on the standard grid of the unit-amplitude line
/// damping^(m-1) cos(m omega0 tau + phase), m = 1..n.
[[nodiscard]] Spectrum line_kernel(double omega0, double phase, double damping, double tau,
                                   std::size_t n);

/// n -> infinity limit of line_kernel at frequency w:
/// (tau / 2) sum_{s = +-1} e^{i s phase} z_s / (1 - damping z_s), z_s = e^{i(w + s omega0) tau}.
[[nodiscard]] Complex broadened_line(double omega, double omega0, double phase, double damping,
                                     double tau);

}  // namespace qspec
