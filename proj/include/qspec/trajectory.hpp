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

// Monte Carlo sampling of RIM outcome strings and the two-point estimator.

#include <cstdint>
#include <vector>

#include "qspec/bath_model.hpp"
#include "qspec/channels.hpp"
#include "qspec/correlation.hpp"

namespace qspec {

struct TrajectoryRecord {
  std::vector<std::int8_t> outcomes;  // r_1 .. r_{N+1}, each +1 or -1
  std::uint64_t seed = 0;
  std::uint32_t renormalizations = 0;
};

struct SamplePlan {
  double delta = 0.0;
  double epsilon = 0.0;
  std::uint64_t n_samples = 0;
};

/// n_samples = ceil((2 / delta^2) ln(2 / epsilon)).
[[nodiscard]] SamplePlan plan_samples(double delta, double epsilon);

/// splitmix64 finalizer.
[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of trajectory `index` under `master`: splitmix64(splitmix64(master) ^
/// (index * golden-ratio increment)).
[[nodiscard]] std::uint64_t trajectory_seed(std::uint64_t master, std::uint64_t index) noexcept;

inline constexpr double kTraceDriftTolerance = 1e-8;
/// Drifts above this are counted in TrajectoryRecord::renormalizations.
inline constexpr double kRenormalizationReportThreshold = 1e-12;
inline constexpr double kForcedOutcomeProbability = 1e-14;

/// One run of n + 1 RIMs with n free evolutions in between (the last free
/// evolution is skipped since it cannot influence any recorded outcome).
[[nodiscard]] TrajectoryRecord sample_trajectory(const RimCycle& cycle, const Operator& rho0,
                                                 std::size_t n, std::uint64_t seed);

[[nodiscard]] TrajectoryRecord sample_trajectory(const BathModel& bath, const RimConfig& cfg,
                                                 const FreeEvolver& free, double tau,
                                                 std::size_t n, std::uint64_t seed);

/// Integer sums of r_1 r_{m+1} (and optionally all pairs at lag m), so that
/// merging partial results is exact and order independent.
class CorrelationAccumulator {
 public:
  CorrelationAccumulator(std::size_t n, bool lag_averaged = false);

  void add(const TrajectoryRecord& rec);
  void merge(const CorrelationAccumulator& other);

  [[nodiscard]] std::uint64_t count() const noexcept { return count_; }
  [[nodiscard]] CorrelationSeries series(double tau) const;

 private:
  std::size_t n_;
  bool lag_averaged_;
  std::uint64_t count_ = 0;
  std::vector<std::int64_t> sums_;
  std::vector<std::int64_t> pair_counts_;
};

/// values[m-1] = mean of outcomes[0] * outcomes[m]; with lag_averaged, the
/// mean over all pairs (k, k + m) instead.
[[nodiscard]] CorrelationSeries estimate_correlation(const std::vector<TrajectoryRecord>& records,
                                                     std::size_t n, double tau,
                                                     bool lag_averaged = false);

struct MonteCarloOptions {
  std::uint64_t n_samples = 0;
  std::uint64_t master_seed = 0;
  unsigned threads = 0;        // 0: hardware concurrency capped by QSPEC_THREADS
  bool lag_averaged = false;
  bool keep_records = false;
};

struct MonteCarloResult {
  CorrelationSeries series;
  std::vector<TrajectoryRecord> records;  // filled only with keep_records
  std::uint64_t renormalizations = 0;
};

/// Samples trajectories 0..n_samples-1 of the master seed in parallel.
[[nodiscard]] MonteCarloResult run_monte_carlo(const RimCycle& cycle, const Operator& rho0,
                                               std::size_t n, const MonteCarloOptions& opts);

/// Worker count from QSPEC_THREADS (if set) and the hardware.
[[nodiscard]] unsigned worker_count(unsigned requested = 0);

}  // namespace qspec
