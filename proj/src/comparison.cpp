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

#include "qspec/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qspec/error.hpp"
#include "qspec/trajectory.hpp"

namespace qspec {

std::string_view to_string(Method m) noexcept { return m == Method::Weak ? "weak" : "corr"; }

Spectrum reference_spectrum(const BathModel& bath, double tau, std::size_t n) {
  return reconstruct_spectrum(analytic_correlation(bath, tau, n));
}

namespace {

FreeEvolver gap_evolver(const BathModel& bath, const DissipationSpec& diss, double t) {
  if (diss.gamma1 == 0.0 && diss.gamma_phi == 0.0) {
    return FreeEvolver::unitary(expm_hermitian(bath.b_op, t));
  }
  return FreeEvolver::superoperator(dissipative_free_evolution(bath, diss, t));
}

std::uint64_t point_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return splitmix64(splitmix64(splitmix64(seed ^ a) ^ b) ^ c);
}

std::vector<double> gaussian_estimate(const std::vector<double>& exact, std::uint64_t n_samples,
                                      std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> out(exact.size());
  for (std::size_t m = 0; m < exact.size(); ++m) {
    const double c = std::clamp(exact[m], -1.0, 1.0);
    const double sd = std::sqrt((1.0 - c * c) / static_cast<double>(n_samples));
    out[m] = exact[m] + sd * normal(rng);
  }
  return out;
}

std::vector<double> binomial_estimate(const std::vector<double>& exact, std::uint64_t n_samples,
                                      std::mt19937_64& rng) {
  std::vector<double> out(exact.size());
  for (std::size_t m = 0; m < exact.size(); ++m) {
    const double p = std::clamp(0.5 * (1.0 + exact[m]), 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> bin(n_samples, p);
    const double plus = static_cast<double>(bin(rng));
    out[m] = (2.0 * plus - static_cast<double>(n_samples)) / static_cast<double>(n_samples);
  }
  return out;
}

struct Accum {
  double sum = 0.0;
  double sum_sq = 0.0;
  int count = 0;
  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++count;
  }
  [[nodiscard]] double mean() const { return sum / count; }
  [[nodiscard]] double spread() const {
    if (count < 2) return 0.0;
    const double m = mean();
    return std::sqrt(std::max(0.0, (sum_sq - count * m * m) / (count - 1)));
  }
};

}  // namespace

std::vector<ResourceReport> run_comparison(const BathModel& bath, const ComparisonGrid& grid,
                                           const ComparisonOptions& opts) {
  validate_bath(bath);
  if (opts.repetitions < 1) throw Error(ErrorCode::OutOfRange, "repetitions must be >= 1");
  std::vector<ResourceReport> reports;
  if (grid.n_points.empty() || grid.n_samples.empty() || grid.tau1.empty()) return reports;
  if (!(grid.tau > 0.0)) throw Error(ErrorCode::OutOfRange, "tau must be positive");

  struct Variant {
    Method method;
    double tau1;
  };
  std::vector<Variant> variants;
  for (double t1 : grid.tau1) variants.push_back({Method::Weak, t1});
  std::vector<double> corr_tau1;
  for (double t1 : grid.tau1) {
    for (double f : grid.corr_tau1_factors) {
      const double c = f * t1;
      const bool seen = std::any_of(corr_tau1.begin(), corr_tau1.end(), [&](double x) {
        return std::abs(x - c) <= 1e-12 * std::max(1.0, std::abs(c));
      });
      if (!seen) corr_tau1.push_back(c);
    }
  }
  for (double t1 : corr_tau1) variants.push_back({Method::Corr, t1});

  std::optional<FreeEvolver> full_step;
  for (std::size_t in = 0; in < grid.n_points.size(); ++in) {
    const std::size_t n = grid.n_points[in];
    const Spectrum ref = reference_spectrum(bath, grid.tau, n);
    for (std::size_t iv = 0; iv < variants.size(); ++iv) {
      const Variant& v = variants[iv];
      RimConfig cfg;
      cfg.tau1 = v.tau1;
      const double tau2 = grid.tau - v.tau1;
      if (tau2 < 0.0) throw Error(ErrorCode::OutOfRange, "tau1 exceeds the cycle period");
      const KrausChannel rim = build_rim_channel(bath, cfg);
      const RimCycle cycle(rim, gap_evolver(bath, opts.dissipation, tau2), grid.tau);
      CorrelationSeries exact;
      if (v.method == Method::Weak) {
        exact = exact_cycle_correlation(cycle, bath.rho0, n);
      } else {
        if (!full_step) full_step = gap_evolver(bath, opts.dissipation, grid.tau);
        exact = correlation_spectroscopy(cycle, *full_step, bath.rho0, n);
      }
      const double scale = 4.0 * v.tau1 * v.tau1;
      for (std::size_t is = 0; is < grid.n_samples.size(); ++is) {
        const std::uint64_t ns = grid.n_samples[is];
        Accum acc;
        for (int rep = 0; rep < opts.repetitions; ++rep) {
          const std::uint64_t s = point_seed(opts.seed, (in << 20) ^ iv,
                                             is, static_cast<std::uint64_t>(rep));
          std::vector<double> est;
          if (opts.noise == NoiseModel::Gaussian) {
            std::mt19937_64 rng(s);
            est = gaussian_estimate(exact.values, ns, rng);
          } else if (v.method == Method::Corr) {
            std::mt19937_64 rng(s);
            est = binomial_estimate(exact.values, ns, rng);
          } else {
            MonteCarloOptions mc;
            mc.n_samples = ns;
            mc.master_seed = s;
            est = run_monte_carlo(cycle, bath.rho0, n, mc).series.values;
          }
          const Spectrum spec = scaled(dft_samples(est, grid.tau), scale);
          acc.add(estimation_error(ref, spec));
        }
        ResourceReport r;
        r.method = v.method;
        r.n_points = n;
        r.tau = grid.tau;
        r.tau1 = v.tau1;
        r.n_samples = ns;
        r.total_detection_time = v.method == Method::Weak ? weak_detection_time(n, grid.tau)
                                                          : corr_detection_time(n, grid.tau);
        r.resource_complexity = static_cast<double>(ns) * r.total_detection_time;
        r.estimation_error = acc.mean();
        r.error_spread = acc.spread();
        reports.push_back(r);
      }
    }
  }
  return reports;
}

std::optional<double> resource_at_error(const std::vector<ResourceReport>& reports, Method method,
                                        double target) {
  std::optional<double> best;
  for (const auto& r : reports) {
    if (r.method != method || r.estimation_error > target) continue;
    if (!best || r.resource_complexity < *best) best = r.resource_complexity;
  }
  return best;
}

}  // namespace qspec
