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

#include "qspec/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <string>
#include <thread>

#include "qspec/error.hpp"

namespace qspec {

SamplePlan plan_samples(double delta, double epsilon) {
  if (!(delta > 0.0 && delta <= 1.0) || !(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorCode::OutOfRange, "need 0 < delta <= 1 and 0 < epsilon < 1");
  }
  const double raw = (2.0 / (delta * delta)) * std::log(2.0 / epsilon);
  // Guard against ceil() of a value that is an integer up to roundoff.
  const double rounded = std::round(raw);
  const double n = std::abs(raw - rounded) <= 1e-9 * std::max(1.0, raw) ? rounded : std::ceil(raw);
  return {delta, epsilon, static_cast<std::uint64_t>(n)};
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t trajectory_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(master) ^ (index * 0x9E3779B97F4A7C15ULL));
}

namespace {

struct Workspace {
  Operator rho, next, work;
  explicit Workspace(Index d) : rho(d, d), next(d, d), work(d, d) {}
};

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void sample_into(const RimCycle& cycle, const Operator& rho0, std::size_t n, std::uint64_t seed,
                 Workspace& ws, TrajectoryRecord& rec) {
  std::mt19937_64 rng(seed);
  rec.seed = seed;
  rec.renormalizations = 0;
  rec.outcomes.resize(n + 1);
  ws.rho = rho0;
  const Operator e0t = cycle.effect(0).transpose();
  for (std::size_t step = 0; step <= n; ++step) {
    double p0 = e0t.cwiseProduct(ws.rho).sum().real();
    p0 = std::clamp(p0, 0.0, 1.0);
    int a;
    if (p0 < kForcedOutcomeProbability) {
      a = 1;
    } else if (1.0 - p0 < kForcedOutcomeProbability) {
      a = 0;
    } else {
      a = uniform01(rng) < p0 ? 0 : 1;
    }
    rec.outcomes[step] = static_cast<std::int8_t>(a == 0 ? 1 : -1);
    if (step == n) break;
    const double p = a == 0 ? p0 : 1.0 - p0;
    cycle.measure(ws.rho, a, ws.next, ws.work);
    ws.next /= p;
    cycle.free().apply_inplace(ws.next, a, ws.work);
    const double tr = ws.next.trace().real();
    const double drift = std::abs(tr - 1.0);
    if (drift > kTraceDriftTolerance) {
      throw Error(ErrorCode::InvalidState, "trajectory state lost normalization");
    }
    if (drift > 0.0) ws.next /= tr;
    if (drift > kRenormalizationReportThreshold) ++rec.renormalizations;
    std::swap(ws.rho, ws.next);
  }
}

void require_state(const Operator& rho0, Index d) {
  if (rho0.rows() != d || rho0.cols() != d) {
    throw Error(ErrorCode::DimensionMismatch, "state and cycle differ in size");
  }
  if (!is_density_matrix(rho0)) throw Error(ErrorCode::InvalidState, "rho0 is not a density matrix");
}

}  // namespace

TrajectoryRecord sample_trajectory(const RimCycle& cycle, const Operator& rho0, std::size_t n,
                                   std::uint64_t seed) {
  require_state(rho0, cycle.dim());
  Workspace ws(cycle.dim());
  TrajectoryRecord rec;
  sample_into(cycle, rho0, n, seed, ws, rec);
  return rec;
}

TrajectoryRecord sample_trajectory(const BathModel& bath, const RimConfig& cfg,
                                   const FreeEvolver& free, double tau, std::size_t n,
                                   std::uint64_t seed) {
  const RimCycle cycle(build_rim_channel(bath, cfg), free, tau);
  return sample_trajectory(cycle, bath.rho0, n, seed);
}

CorrelationAccumulator::CorrelationAccumulator(std::size_t n, bool lag_averaged)
    : n_(n), lag_averaged_(lag_averaged), sums_(n, 0), pair_counts_(n, 0) {}

void CorrelationAccumulator::add(const TrajectoryRecord& rec) {
  if (rec.outcomes.size() < n_ + 1) {
    throw Error(ErrorCode::DimensionMismatch, "trajectory shorter than the requested lags");
  }
  const auto& r = rec.outcomes;
  for (std::size_t m = 1; m <= n_; ++m) {
    if (lag_averaged_) {
      std::int64_t acc = 0;
      for (std::size_t k = 0; k + m <= n_; ++k) acc += r[k] * r[k + m];
      sums_[m - 1] += acc;
      pair_counts_[m - 1] += static_cast<std::int64_t>(n_ + 1 - m);
    } else {
      sums_[m - 1] += r[0] * r[m];
      pair_counts_[m - 1] += 1;
    }
  }
  ++count_;
}

void CorrelationAccumulator::merge(const CorrelationAccumulator& other) {
  if (other.n_ != n_ || other.lag_averaged_ != lag_averaged_) {
    throw Error(ErrorCode::DimensionMismatch, "merging incompatible accumulators");
  }
  for (std::size_t m = 0; m < n_; ++m) {
    sums_[m] += other.sums_[m];
    pair_counts_[m] += other.pair_counts_[m];
  }
  count_ += other.count_;
}

CorrelationSeries CorrelationAccumulator::series(double tau) const {
  if (count_ == 0) throw Error(ErrorCode::EmptyInput, "no trajectories to average");
  CorrelationSeries s;
  s.tau = tau;
  s.provenance = Provenance::MonteCarlo;
  s.n_samples = count_;
  s.total_detection_time = weak_detection_time(n_, tau);
  s.values.resize(n_);
  for (std::size_t m = 0; m < n_; ++m) {
    s.values[m] = static_cast<double>(sums_[m]) / static_cast<double>(pair_counts_[m]);
  }
  return s;
}

CorrelationSeries estimate_correlation(const std::vector<TrajectoryRecord>& records, std::size_t n,
                                       double tau, bool lag_averaged) {
  if (records.empty()) throw Error(ErrorCode::EmptyInput, "no trajectories to average");
  CorrelationAccumulator acc(n, lag_averaged);
  for (const auto& r : records) acc.add(r);
  return acc.series(tau);
}

unsigned worker_count(unsigned requested) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  unsigned n = requested == 0 ? hw : requested;
  if (const char* env = std::getenv("QSPEC_THREADS")) {
    try {
      const unsigned long cap = std::stoul(env);
      if (cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    } catch (const std::exception&) {
      // Unparseable values are ignored.
    }
  }
  return std::max(1u, n);
}

MonteCarloResult run_monte_carlo(const RimCycle& cycle, const Operator& rho0, std::size_t n,
                                 const MonteCarloOptions& opts) {
  require_state(rho0, cycle.dim());
  if (opts.n_samples == 0) throw Error(ErrorCode::EmptyInput, "zero Monte Carlo samples");
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(worker_count(opts.threads), opts.n_samples));
  std::vector<CorrelationAccumulator> partial(workers, CorrelationAccumulator(n, opts.lag_averaged));
  std::vector<std::uint64_t> renorm(workers, 0);
  MonteCarloResult result;
  if (opts.keep_records) result.records.resize(opts.n_samples);

  auto task = [&](unsigned w) {
    Workspace ws(cycle.dim());
    TrajectoryRecord rec;
    const std::uint64_t begin = opts.n_samples * w / workers;
    const std::uint64_t end = opts.n_samples * (w + 1) / workers;
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      sample_into(cycle, rho0, n, trajectory_seed(opts.master_seed, idx), ws, rec);
      partial[w].add(rec);
      renorm[w] += rec.renormalizations;
      if (opts.keep_records) result.records[idx] = rec;
    }
  };

  if (workers == 1) {
    task(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          task(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  CorrelationAccumulator total(n, opts.lag_averaged);
  for (const auto& p : partial) total.merge(p);
  for (auto r : renorm) result.renormalizations += r;
  result.series = total.series(cycle.tau());
  return result;
}

}  // namespace qspec
