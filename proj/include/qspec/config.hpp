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

// Experiment configuration read from TOML.
//
// Units: [units] time = "us" (frequencies in rad/us, hyperfine in kHz unless
// hyperfine = "rad_per_us", positions in angstrom, field in tesla) or
// time = "dimensionless" (every quantity in the same arbitrary unit).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qspec/baths.hpp"
#include "qspec/channels.hpp"
#include "qspec/comparison.hpp"
#include "qspec/dd_control.hpp"
#include "qspec/spectrum.hpp"

namespace qspec {

enum class BathKind { Qubit, SpinBoson, CentralSpin };
enum class TimeUnits { Microseconds, Dimensionless };
enum class SignalModel { Exact, Weak, Analytic, Corr };
enum class SamplingMode { Exact, MonteCarlo };
enum class OutputFormat { Csv, Json };

struct QubitSpec {
  double a = 0.0;
  double b = 0.0;
};

struct CentralSpinConfig {
  std::vector<Eigen::Vector3d> hyperfine;  // as written in the file
  std::vector<Eigen::Vector3d> positions;  // angstrom
  std::optional<double> field_tesla;
  std::optional<double> larmor;            // direct omega_0, overrides field_tesla
  bool hyperfine_in_khz = true;
  ProbeSubspace subspace = ProbeSubspace::PlusMinusOne;
};

struct ProtocolConfig {
  double tau2 = 0.0;
  std::optional<double> tau_given;  // kept verbatim when the file sets tau
  std::size_t n_points = 0;
  EvolverMode evolver = EvolverMode::IdealB;
  int dd_pulses = 0;
  DissipationSpec dissipation;
  SignalModel model = SignalModel::Exact;
  bool spin_boson_tensor = false;  // full product space instead of a sum over modes

  [[nodiscard]] double tau(const RimConfig& rim) const {
    return tau_given ? *tau_given : rim.tau1 + tau2;
  }
};

struct SamplingConfig {
  SamplingMode mode = SamplingMode::Exact;
  std::optional<std::uint64_t> n_samples;
  std::optional<double> delta;
  std::optional<double> epsilon;
  std::uint64_t seed = 0;
  bool lag_averaged = false;
};

struct OutputConfig {
  std::string directory = "out";
  OutputFormat format = OutputFormat::Csv;
  double peak_threshold = 0.25;
  Window window = Window::None;
  bool trajectories = false;
};

struct CompareConfig {
  ComparisonGrid grid;  // grid.tau is filled from the protocol
  std::vector<double> gamma_tau{0.0};  // relaxation rate Gamma_1 times tau
  int repetitions = 1;
  NoiseModel noise = NoiseModel::Gaussian;
};

struct ExperimentConfig {
  TimeUnits units = TimeUnits::Microseconds;
  BathKind kind = BathKind::Qubit;
  QubitSpec qubit;
  SpinBosonSpec spin_boson;
  CentralSpinConfig central;
  RimConfig rim;
  ProtocolConfig protocol;
  SamplingConfig sampling;
  OutputConfig output;
  CompareConfig compare;
};

/// Throws Error(ConfigError) with a message naming the offending key.
[[nodiscard]] ExperimentConfig parse_config(const std::string& text,
                                            const std::string& source = "config");
[[nodiscard]] ExperimentConfig load_config(const std::string& path);

/// Central-spin spec in rad/us and angstrom.
[[nodiscard]] CentralSpinSpec resolve_central_spin(const ExperimentConfig& cfg);

/// Samples per run: explicit n_samples, else plan_samples(delta, epsilon).
[[nodiscard]] std::uint64_t resolved_samples(const SamplingConfig& s);

[[nodiscard]] std::string_view to_string(BathKind k) noexcept;
[[nodiscard]] std::string_view to_string(SignalModel m) noexcept;
[[nodiscard]] std::string_view to_string(EvolverMode m) noexcept;

}  // namespace qspec
