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

#include "qspec/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qspec/error.hpp"

namespace qspec {

std::string_view to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::Analytic: return "analytic";
    case Provenance::ExactChannel: return "exact-channel";
    case Provenance::WeakApprox: return "weak-approx";
    case Provenance::CorrSpectroscopy: return "corr-spectroscopy";
    case Provenance::MonteCarlo: return "monte-carlo";
  }
  return "unknown";
}

double weak_detection_time(std::size_t n, double tau) { return static_cast<double>(n) * tau; }

double corr_detection_time(std::size_t n, double tau) {
  const double nn = static_cast<double>(n);
  return nn * (nn + 1.0) * tau / 2.0;
}

ModeTable build_mode_table(const BathModel& bath) {
  validate_bath(bath);
  const BathEigenbasis eb = bath_eigenbasis(bath.b_op);
  const Operator& v = eb.vectors;
  const Operator a = v.adjoint() * bath.a_op * v;
  const Operator arho = a * (v.adjoint() * bath.rho0 * v);
  const Index d = a.rows();
  ModeTable modes;
  double max_amp = 0.0;
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      const Complex c = a(j, i) * arho(i, j);
      Mode m;
      m.omega = eb.energies(i) - eb.energies(j);
      m.amplitude = std::abs(c);
      m.phase = m.amplitude > 0.0 ? -std::arg(c) : 0.0;
      m.i = i;
      m.j = j;
      max_amp = std::max(max_amp, m.amplitude);
      modes.push_back(m);
    }
  }
  std::erase_if(modes, [&](const Mode& m) {
    return m.amplitude == 0.0 || m.amplitude < kModePruneRatio * max_amp;
  });
  return modes;
}

ModeTable with_perturbative_damping(ModeTable modes, const BathModel& bath, double tau1) {
  const BathEigenbasis eb = bath_eigenbasis(bath.b_op);
  const Eigen::MatrixXd diag = generator_diagonal(bath.a_op, eb);
  for (Mode& m : modes) {
    const double lam = 1.0 + tau1 * tau1 * diag(m.i, m.j);
    m.damping = std::clamp(lam, std::numeric_limits<double>::min(), 1.0);
  }
  return modes;
}

ModeTable with_exact_damping(ModeTable modes, const SpectralDecomposition& dec,
                             const BathEigenbasis& eb) {
  const std::vector<PairMatch> matches = match_pairs(dec, eb);
  const Index d = eb.vectors.rows();
  std::vector<Index> k_of(static_cast<std::size_t>(d * d), 0);
  for (const PairMatch& pm : matches) k_of[static_cast<std::size_t>(pm.i * d + pm.j)] = pm.k;
  for (Mode& m : modes) {
    const double lam = std::abs(dec.eigenvalues(k_of[static_cast<std::size_t>(m.i * d + m.j)]));
    m.damping = std::clamp(lam, std::numeric_limits<double>::min(), 1.0);
  }
  return modes;
}

std::vector<double> evaluate_modes(const ModeTable& modes, const std::vector<double>& times) {
  std::vector<double> out(times.size(), 0.0);
  for (std::size_t k = 0; k < times.size(); ++k) {
    double acc = 0.0;
    for (const Mode& m : modes) acc += m.amplitude * std::cos(m.omega * times[k] + m.phase);
    out[k] = acc;
  }
  return out;
}

CorrelationSeries analytic_correlation(const BathModel& bath, double tau, std::size_t n) {
  CorrelationSeries s;
  s.tau = tau;
  s.provenance = Provenance::Analytic;
  std::vector<double> times(n);
  for (std::size_t m = 0; m < n; ++m) times[m] = static_cast<double>(m + 1) * tau;
  s.values = evaluate_modes(build_mode_table(bath), times);
  s.total_detection_time = weak_detection_time(n, tau);
  return s;
}

double direct_correlation(const BathModel& bath, double t) {
  validate_bath(bath);
  const Operator u = expm_hermitian(bath.b_op, t);
  const Operator at = u.adjoint() * bath.a_op * u;
  const Operator& a = bath.a_op;
  const Operator sym = at * a + a * at;
  return 0.5 * (bath.rho0 * sym).trace().real();
}

namespace {

void require_lags(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::OutOfRange, "need at least one lag");
}

std::vector<double> spectral_values(const ConcatenatedChannel& ch, const Eigen::VectorXcd& rho,
                                    std::size_t n) {
  const SpectralDecomposition dec = spectral_decompose(ch);
  const Eigen::RowVectorXcd id = identity_functional(ch.superop.dim());
  const Eigen::RowVectorXcd lhs = id * ch.p_hat.matrix() * dec.right;
  const Eigen::VectorXcd rhs = dec.left * (ch.p_hat.matrix() * rho);
  const Eigen::VectorXcd coeff = lhs.transpose().cwiseProduct(rhs);
  std::vector<double> out(n);
  Eigen::VectorXcd power = Eigen::VectorXcd::Ones(coeff.size());
  for (std::size_t m = 0; m < n; ++m) {
    out[m] = coeff.cwiseProduct(power).sum().real();
    power = power.cwiseProduct(dec.eigenvalues);
  }
  return out;
}

std::vector<double> iterated_values(const ConcatenatedChannel& ch, const Eigen::VectorXcd& rho,
                                    std::size_t n) {
  const Eigen::RowVectorXcd lhs = identity_functional(ch.superop.dim()) * ch.p_hat.matrix();
  Eigen::VectorXcd x = ch.p_hat.matrix() * rho;
  std::vector<double> out(n);
  for (std::size_t m = 0; m < n; ++m) {
    out[m] = (lhs * x)(0).real();
    if (m + 1 < n) x = ch.superop.matrix() * x;
  }
  return out;
}

}  // namespace

CorrelationSeries exact_channel_correlation(const ConcatenatedChannel& ch, const Operator& rho0,
                                            std::size_t n, ChannelPath path) {
  require_lags(n);
  if (rho0.rows() != ch.superop.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "state and channel differ in size");
  }
  const Eigen::VectorXcd rho = vectorize(rho0).entries();
  CorrelationSeries s;
  s.tau = ch.tau;
  s.provenance = Provenance::ExactChannel;
  s.total_detection_time = weak_detection_time(n, ch.tau);
  switch (path) {
    case ChannelPath::Spectral:
      s.values = spectral_values(ch, rho, n);
      break;
    case ChannelPath::Iterated:
      s.values = iterated_values(ch, rho, n);
      break;
    case ChannelPath::Auto:
      try {
        s.values = spectral_values(ch, rho, n);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NonDiagonalizable) throw;
        s.values = iterated_values(ch, rho, n);
      }
      break;
  }
  return s;
}

CorrelationSeries exact_cycle_correlation(const RimCycle& cycle, const Operator& rho0,
                                          std::size_t n) {
  require_lags(n);
  if (rho0.rows() != cycle.dim() || rho0.cols() != cycle.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "state and cycle differ in size");
  }
  CorrelationSeries s;
  s.tau = cycle.tau();
  s.provenance = Provenance::ExactChannel;
  s.total_detection_time = weak_detection_time(n, cycle.tau());
  s.values.resize(n);
  const Operator obs_t = cycle.observable().transpose();
  Operator x = cycle.signed_cycle(rho0);
  for (std::size_t m = 0; m < n; ++m) {
    s.values[m] = obs_t.cwiseProduct(x).sum().real();
    if (m + 1 < n) x = cycle.cycle(x);
  }
  return s;
}

CorrelationSeries weak_correlation(const ModeTable& modes, double tau1, double tau,
                                   std::size_t n) {
  CorrelationSeries s;
  s.tau = tau;
  s.provenance = Provenance::WeakApprox;
  s.total_detection_time = weak_detection_time(n, tau);
  s.values.assign(n, 0.0);
  const double scale = 4.0 * tau1 * tau1;
  for (const Mode& md : modes) {
    double envelope = 1.0;
    for (std::size_t m = 1; m <= n; ++m) {
      const double t = static_cast<double>(m) * tau;
      s.values[m - 1] += scale * md.amplitude * envelope * std::cos(md.omega * t + md.phase);
      envelope *= md.damping;
    }
  }
  return s;
}

CorrelationSeries correlation_spectroscopy(const RimCycle& first, const FreeEvolver& step,
                                           const Operator& rho0, std::size_t n) {
  require_lags(n);
  if (rho0.rows() != first.dim() || step.dim() != first.dim() || step.outcome_dependent()) {
    throw Error(ErrorCode::DimensionMismatch, "incompatible cycle, gap evolution or state");
  }
  CorrelationSeries s;
  s.tau = first.tau();
  s.provenance = Provenance::CorrSpectroscopy;
  s.total_detection_time = corr_detection_time(n, first.tau());
  s.values.resize(n);
  const Operator obs_t = first.observable().transpose();
  Operator x = first.signed_cycle(rho0);
  Operator work(first.dim(), first.dim());
  for (std::size_t m = 0; m < n; ++m) {
    s.values[m] = obs_t.cwiseProduct(x).sum().real();
    if (m + 1 < n) step.apply_inplace(x, 0, work);
  }
  return s;
}

CorrelationSeries correlation_spectroscopy(const BathModel& bath, const RimConfig& cfg,
                                           double tau, std::size_t n) {
  require_lags(n);
  validate_bath(bath);
  const double tau2 = tau - cfg.tau1;
  if (tau2 < 0.0) throw Error(ErrorCode::OutOfRange, "tau must not be shorter than tau1");
  const RimCycle first(build_rim_channel(bath, cfg),
                       FreeEvolver::unitary(expm_hermitian(bath.b_op, tau2)), tau);
  return correlation_spectroscopy(first, FreeEvolver::unitary(expm_hermitian(bath.b_op, tau)),
                                  bath.rho0, n);
}

}  // namespace qspec
