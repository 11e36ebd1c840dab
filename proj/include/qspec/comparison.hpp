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

// Resource comparison of repetitive weak measurements against correlation
// spectroscopy: detection time, sample count and spectral estimation error.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qspec/baths.hpp"
#include "qspec/correlation.hpp"
#include "qspec/spectrum.hpp"

namespace qspec {

enum class Method { Weak, Corr };

[[nodiscard]] std::string_view to_string(Method m) noexcept;

struct ComparisonGrid {
  std::vector<std::size_t> n_points;
  std::vector<std::uint64_t> n_samples;
  std::vector<double> tau1;                             // weak-method interaction times
  std::vector<double> corr_tau1_factors{1.0, 2.0, 4.0};  // corr uses factor * tau1
  double tau = 0.0;
};

enum class NoiseModel { Gaussian, MonteCarlo };

struct ComparisonOptions {
  DissipationSpec dissipation;
  NoiseModel noise = NoiseModel::Gaussian;
  int repetitions = 1;
  std::uint64_t seed = 0;
};

struct ResourceReport {
  Method method = Method::Weak;
  std::size_t n_points = 0;
  double tau = 0.0;
  double tau1 = 0.0;
  std::uint64_t n_samples = 0;
  double total_detection_time = 0.0;  // per sample pass
  double resource_complexity = 0.0;   // n_samples * total_detection_time
  double estimation_error = 0.0;      // mean over repetitions
  double error_spread = 0.0;          // standard deviation over repetitions
};

/// For every N, tau1 and N_s of the grid and both methods: exact expectation
/// of the outcome correlation, plus sampling noise (Gaussian with variance
/// (1 - c^2) / N_s per lag, or sampled), spectrum divided by 4 tau1^2, error
/// against the spectrum of the noiseless ideal C(m tau) over the same window.
[[nodiscard]] std::vector<ResourceReport> run_comparison(const BathModel& bath,
                                                         const ComparisonGrid& grid,
                                                         const ComparisonOptions& opts);

/// Smallest resource complexity among reports of `method` reaching `target`.
[[nodiscard]] std::optional<double> resource_at_error(const std::vector<ResourceReport>& reports,
                                                      Method method, double target);

/// Ideal reference spectrum: DFT of C(m tau), m = 1..n.
[[nodiscard]] Spectrum reference_spectrum(const BathModel& bath, double tau, std::size_t n);

}  // namespace qspec
