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

#include "qspec/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "qspec/error.hpp"

namespace qspec {

namespace {

[[noreturn]] void config_fail(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

// Only the exact RIM sequence accumulates back-action over the whole record.
SpinBosonSpec budgeted_spin_boson(const ExperimentConfig& cfg) {
  SpinBosonSpec spec = cfg.spin_boson;
  if (cfg.protocol.model == SignalModel::Exact) {
    spec.tau1 = cfg.rim.tau1;
    spec.n_cycles = static_cast<int>(cfg.protocol.n_points);
  }
  return spec;
}

bool dissipative(const DissipationSpec& d) { return d.gamma1 > 0.0 || d.gamma_phi > 0.0; }

FreeEvolver gap_evolver(const BathModel& bath, const ProtocolConfig& p, double t) {
  if (dissipative(p.dissipation)) {
    return FreeEvolver::superoperator(dissipative_free_evolution(bath, p.dissipation, t));
  }
  switch (p.evolver) {
    case EvolverMode::IdealB: return ideal_b_propagators(bath, t).to_free_evolver();
    case EvolverMode::FreeConditional: return conditional_propagators(bath, {0, t}).to_free_evolver();
    case EvolverMode::Cpmg:
      return conditional_propagators(bath, {p.dd_pulses, t}).to_free_evolver();
  }
  config_fail("unknown evolver");
}

std::vector<double> positive_frequencies(const std::vector<double>& omegas) {
  std::vector<double> w;
  for (double x : omegas) {
    if (std::abs(x) > 1e-12) w.push_back(std::abs(x));
  }
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end(),
                      [](double x, double y) { return std::abs(x - y) <= 1e-9 * std::max(1.0, y); }),
          w.end());
  return w;
}

std::vector<double> binomial_series(const std::vector<double>& exact, std::uint64_t n_samples,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed));
  std::vector<double> out(exact.size());
  for (std::size_t m = 0; m < exact.size(); ++m) {
    const double p = std::clamp(0.5 * (1.0 + exact[m]), 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> bin(n_samples, p);
    const double plus = static_cast<double>(bin(rng));
    out[m] = (2.0 * plus - static_cast<double>(n_samples)) / static_cast<double>(n_samples);
  }
  return out;
}

void check_model_support(const ExperimentConfig& cfg) {
  const auto& p = cfg.protocol;
  const bool mc = cfg.sampling.mode == SamplingMode::MonteCarlo;
  if ((p.model == SignalModel::Weak || p.model == SignalModel::Analytic) &&
      (p.evolver != EvolverMode::IdealB || dissipative(p.dissipation))) {
    config_fail("models weak and analytic assume evolver = \"ideal_b\" without dissipation");
  }
  if (mc && (p.model == SignalModel::Weak || p.model == SignalModel::Analytic)) {
    config_fail("monte-carlo sampling needs model = \"exact\" or \"corr\"");
  }
  if (p.model == SignalModel::Corr && p.evolver != EvolverMode::IdealB) {
    config_fail("model corr needs evolver = \"ideal_b\"");
  }
  if (cfg.kind == BathKind::SpinBoson && !p.spin_boson_tensor) {
    if (mc && p.model == SignalModel::Exact) {
      config_fail("monte-carlo trajectories on a spin-boson bath need spin_boson_tensor = true");
    }
    if (p.evolver != EvolverMode::IdealB) {
      config_fail("the per-mode spin-boson run needs evolver = \"ideal_b\"");
    }
  }
}

// Single bath: every model and both sampling modes.
CorrelationSeries single_bath_signal(const BathModel& bath, const ExperimentConfig& cfg,
                                     SimulationResult& res) {
  const auto& p = cfg.protocol;
  const double tau = p.tau(cfg.rim);
  const std::size_t n = p.n_points;
  const bool mc = cfg.sampling.mode == SamplingMode::MonteCarlo;
  switch (p.model) {
    case SignalModel::Analytic: return analytic_correlation(bath, tau, n);
    case SignalModel::Weak: {
      ModeTable modes = with_perturbative_damping(build_mode_table(bath), bath, cfg.rim.tau1);
      return weak_correlation(modes, cfg.rim.tau1, tau, n);
    }
    case SignalModel::Exact: {
      const RimCycle cycle(build_rim_channel(bath, cfg.rim), gap_evolver(bath, p, p.tau2), tau);
      if (!mc) return exact_cycle_correlation(cycle, bath.rho0, n);
      MonteCarloOptions opts;
      opts.n_samples = res.n_samples;
      opts.master_seed = cfg.sampling.seed;
      opts.lag_averaged = cfg.sampling.lag_averaged;
      opts.keep_records = cfg.output.trajectories;
      MonteCarloResult r = run_monte_carlo(cycle, bath.rho0, n, opts);
      res.renormalizations = r.renormalizations;
      res.records = std::move(r.records);
      return r.series;
    }
    case SignalModel::Corr: {
      const RimCycle first(build_rim_channel(bath, cfg.rim), gap_evolver(bath, p, p.tau2), tau);
      CorrelationSeries s = correlation_spectroscopy(first, gap_evolver(bath, p, tau), bath.rho0, n);
      if (mc) {
        s.values = binomial_series(s.values, res.n_samples, cfg.sampling.seed);
        s.provenance = Provenance::MonteCarlo;
        s.n_samples = res.n_samples;
      }
      return s;
    }
  }
  config_fail("unknown model");
}

// Independent modes: C is the sum of per-mode series.
CorrelationSeries mode_sum_signal(const SpinBosonBath& sb, const ExperimentConfig& cfg,
                                  SimulationResult& res) {
  ExperimentConfig per_mode = cfg;
  per_mode.sampling.mode = SamplingMode::Exact;
  const std::size_t count = sb.modes.size();
  std::vector<CorrelationSeries> parts(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t l = next++; l < count; l = next++) {
      try {
        SimulationResult scratch;
        parts[l] = single_bath_signal(sb.modes[l].bath, per_mode, scratch);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned threads = std::min<unsigned>(worker_count(), static_cast<unsigned>(count));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  CorrelationSeries total = parts.front();
  for (std::size_t l = 1; l < count; ++l) {
    for (std::size_t m = 0; m < total.values.size(); ++m) total.values[m] += parts[l].values[m];
  }
  if (cfg.sampling.mode == SamplingMode::MonteCarlo) {
    // corr model only: the per-mode sum is sampled once as a whole
    total.values = binomial_series(total.values, res.n_samples, cfg.sampling.seed);
  }
  return total;
}

}  // namespace

BathModel build_bath(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case BathKind::Qubit: return qubit_bath(cfg.qubit.a, cfg.qubit.b);
    case BathKind::CentralSpin: return build_central_spin(resolve_central_spin(cfg));
    case BathKind::SpinBoson:
      return spin_boson_tensor_bath(build_spin_boson(budgeted_spin_boson(cfg)));
  }
  config_fail("unknown bath kind");
}

SimulationResult run_simulation(const ExperimentConfig& cfg) {
  check_model_support(cfg);
  const auto& p = cfg.protocol;
  const double tau = p.tau(cfg.rim);
  SimulationResult res;
  if (cfg.sampling.mode == SamplingMode::MonteCarlo) res.n_samples = resolved_samples(cfg.sampling);

  if (cfg.kind == BathKind::SpinBoson && !p.spin_boson_tensor) {
    const SpinBosonBath sb = build_spin_boson(budgeted_spin_boson(cfg));
    std::vector<double> omegas;
    for (const auto& m : sb.modes) {
      omegas.push_back(m.omega);
      res.bath_dim = std::max(res.bath_dim, m.bath.dim());
      res.sampling.two_b_norm += 2.0 * spectral_norm(m.bath.b_op);
    }
    const double two_b = res.sampling.two_b_norm;
    res.sampling = validate_frequencies(omegas, tau);
    res.sampling.two_b_norm = two_b;
    res.mode_frequencies = positive_frequencies(omegas);
    res.series = mode_sum_signal(sb, cfg, res);
  } else {
    const BathModel bath = build_bath(cfg);
    res.bath_dim = bath.dim();
    res.sampling = validate_sampling(bath, tau);
    std::vector<double> omegas;
    for (const Mode& m : build_mode_table(bath)) omegas.push_back(m.omega);
    res.mode_frequencies = positive_frequencies(omegas);
    if (p.model != SignalModel::Analytic && !weak_condition(bath, cfg.rim)) {
      std::ostringstream os;
      os << "weak-measurement condition not met: tau1 * ||A||_eff = "
         << cfg.rim.tau1 * bath.a_norm_eff;
      res.warnings.push_back(os.str());
    }
    res.series = single_bath_signal(bath, cfg, res);
  }
  if (res.n_samples > 0) {
    res.series.provenance = Provenance::MonteCarlo;
    res.series.n_samples = res.n_samples;
  }
  if (!res.sampling.pass) {
    std::ostringstream os;
    os << "aliasing: " << res.sampling.aliased.size()
       << " transition frequencies exceed pi / tau = " << res.sampling.nyquist;
    res.warnings.push_back(os.str());
  }

  res.spectrum = reconstruct_spectrum(res.series, cfg.output.window);
  if (p.model != SignalModel::Analytic) {
    res.spectrum = scaled(std::move(res.spectrum), 4.0 * cfg.rim.tau1 * cfg.rim.tau1);
  }
  res.peaks = find_peaks(res.spectrum, cfg.output.peak_threshold);
  match_peaks(res.peaks, res.mode_frequencies, res.spectrum.resolution);
  return res;
}

std::vector<ComparisonRun> run_compare(const ExperimentConfig& cfg) {
  const BathModel bath = build_bath(cfg);
  const double tau = cfg.protocol.tau(cfg.rim);
  std::vector<ComparisonRun> runs;
  for (double g : cfg.compare.gamma_tau) {
    ComparisonOptions opts;
    opts.dissipation.gamma1 = g / tau;
    opts.noise = cfg.compare.noise;
    opts.repetitions = cfg.compare.repetitions;
    opts.seed = cfg.sampling.seed;
    ComparisonGrid grid = cfg.compare.grid;
    grid.tau = tau;
    runs.push_back({g, run_comparison(bath, grid, opts)});
  }
  return runs;
}

}  // namespace qspec
