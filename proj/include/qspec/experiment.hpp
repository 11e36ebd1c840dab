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

// Orchestration of one configured experiment: bath construction, signal
// generation, spectrum reconstruction and peak annotation.

#include <cstdint>
#include <string>
#include <vector>

#include "qspec/config.hpp"
#include "qspec/correlation.hpp"
#include "qspec/spectrum.hpp"
#include "qspec/trajectory.hpp"

namespace qspec {

struct SimulationResult {
  CorrelationSeries series;
  Spectrum spectrum;  // S = DFT(C) / (4 tau1^2); unscaled for the analytic model
  std::vector<PeakAnnotation> peaks;
  std::vector<double> mode_frequencies;  // populated transition frequencies, ascending
  SamplingDiagnostic sampling;
  std::uint64_t n_samples = 0;  // 0 for exact expectation values
  std::uint64_t renormalizations = 0;
  std::vector<TrajectoryRecord> records;
  Index bath_dim = 0;
  std::vector<std::string> warnings;
};

/// Bath of a qubit or central-spin configuration. Throws for spin_boson
/// unless the product space is requested.
[[nodiscard]] BathModel build_bath(const ExperimentConfig& cfg);

[[nodiscard]] SimulationResult run_simulation(const ExperimentConfig& cfg);

struct ComparisonRun {
  double gamma_tau = 0.0;
  std::vector<ResourceReport> reports;
};

/// One run_comparison per compare.gamma_tau entry, Gamma_1 = gamma_tau / tau.
[[nodiscard]] std::vector<ComparisonRun> run_compare(const ExperimentConfig& cfg);

}  // namespace qspec
