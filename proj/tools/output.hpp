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

// Artifact writers of the command-line tool. Floats are written in the
// shortest form that round-trips (at most 17 significant digits).

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "qspec/experiment.hpp"

namespace qspec::cli {

[[nodiscard]] std::string format_double(double v);

[[nodiscard]] nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg);

/// Writes the file and returns its name for the manifest.
std::string write_correlation(const std::filesystem::path& dir, const CorrelationSeries& s,
                              OutputFormat fmt);
std::string write_spectrum(const std::filesystem::path& dir, const Spectrum& s, OutputFormat fmt);
std::string write_peaks(const std::filesystem::path& dir, const std::vector<PeakAnnotation>& peaks,
                        OutputFormat fmt);
std::string write_trajectories(const std::filesystem::path& dir,
                               const std::vector<TrajectoryRecord>& records);
std::string write_comparison(const std::filesystem::path& dir,
                             const std::vector<ComparisonRun>& runs, OutputFormat fmt);
void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j);

}  // namespace qspec::cli
