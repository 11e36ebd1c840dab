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

#include "qspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qspec/error.hpp"

namespace qspec {

std::vector<double> Spectrum::magnitude() const {
  std::vector<double> out(amplitudes.size());
  for (std::size_t k = 0; k < amplitudes.size(); ++k) out[k] = std::abs(amplitudes[k]);
  return out;
}

std::vector<double> Spectrum::real_part() const {
  std::vector<double> out(amplitudes.size());
  for (std::size_t k = 0; k < amplitudes.size(); ++k) out[k] = amplitudes[k].real();
  return out;
}

Spectrum dft_samples(const std::vector<double>& values, double tau, Window window) {
  const std::size_t n = values.size();
  if (n == 0) throw Error(ErrorCode::EmptySeries, "empty correlation series");
  if (!(tau > 0.0)) throw Error(ErrorCode::OutOfRange, "sampling period must be positive");
  const double pi = std::numbers::pi;
  std::vector<double> x(values);
  if (window == Window::Hann) {
    for (std::size_t m = 1; m <= n; ++m) {
      const double s = std::sin(pi * static_cast<double>(m) / static_cast<double>(n + 1));
      x[m - 1] *= s * s;
    }
  }
  // e^{i pi j / N} for j = 0..2N-1
  const std::size_t period = 2 * n;
  std::vector<Complex> roots(period);
  for (std::size_t j = 0; j < period; ++j) {
    roots[j] = std::polar(1.0, pi * static_cast<double>(j) / static_cast<double>(n));
  }
  Spectrum s;
  s.tau = tau;
  s.n = n;
  s.resolution = pi / (static_cast<double>(n) * tau);
  s.frequencies.resize(n + 1);
  s.amplitudes.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    s.frequencies[k] = static_cast<double>(k) * s.resolution;
    Complex acc = 0.0;
    std::size_t j = k % period;
    for (std::size_t m = 1; m <= n; ++m) {
      acc += roots[j] * x[m - 1];
      j += k;
      if (j >= period) j %= period;
    }
    s.amplitudes[k] = tau * acc;
  }
  return s;
}

Spectrum reconstruct_spectrum(const CorrelationSeries& series, Window window) {
  if (series.values.empty()) throw Error(ErrorCode::EmptySeries, "empty correlation series");
  return dft_samples(series.values, series.tau, window);
}

Spectrum scaled(Spectrum s, double factor) {
  for (auto& a : s.amplitudes) a /= factor;
  return s;
}

std::vector<PeakAnnotation> find_peaks(const Spectrum& spec, double threshold,
                                       PeakQuantity quantity) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorCode::OutOfRange, "threshold must lie in (0, 1)");
  }
  const std::vector<double> y =
      quantity == PeakQuantity::Magnitude ? spec.magnitude() : spec.real_part();
  std::vector<PeakAnnotation> peaks;
  const std::size_t len = y.size();
  if (len < 2) return peaks;
  const double ymax = *std::max_element(y.begin(), y.end());
  if (!(ymax > 0.0)) return peaks;
  const double cut = threshold * ymax;
  const double dw = spec.resolution;
  for (std::size_t k = 0; k < len; ++k) {
    const bool left_ok = k == 0 || y[k] > y[k - 1];
    const bool right_ok = k + 1 == len || y[k] >= y[k + 1];
    if (!left_ok || !right_ok || y[k] <= cut) continue;
    // A plateau reaching the upper edge is not a maximum.
    if (k + 1 < len && y[k] == y[k + 1]) {
      std::size_t q = k + 1;
      while (q + 1 < len && y[q + 1] == y[k]) ++q;
      if (q + 1 == len || y[q + 1] > y[k]) continue;
    }
    PeakAnnotation p;
    p.bin = k;
    p.center = spec.frequencies[k];
    p.height = y[k];
    if (k > 0 && k + 1 < len) {
      const double ym = y[k - 1], y0 = y[k], yp = y[k + 1];
      const double denom = ym - 2.0 * y0 + yp;
      if (denom < 0.0) {
        const double off = 0.5 * (ym - yp) / denom;
        p.center += off * dw;
        p.height = y0 - 0.25 * (ym - yp) * off;
      }
    }
    const double half = 0.5 * y[k];
    double left = spec.frequencies.front();
    for (std::size_t q = k; q > 0; --q) {
      if (y[q - 1] < half) {
        const double f = (y[q] - half) / (y[q] - y[q - 1]);
        left = spec.frequencies[q] - f * dw;
        break;
      }
    }
    double right = spec.frequencies.back();
    for (std::size_t q = k; q + 1 < len; ++q) {
      if (y[q + 1] < half) {
        const double f = (y[q] - half) / (y[q] - y[q + 1]);
        right = spec.frequencies[q] + f * dw;
        break;
      }
    }
    p.fwhm = std::max(right - left, dw);
    peaks.push_back(p);
  }
  return peaks;
}

void match_peaks(std::vector<PeakAnnotation>& peaks, const std::vector<double>& mode_frequencies,
                 double tolerance) {
  for (auto& p : peaks) {
    p.matched_mode.reset();
    double best = tolerance;
    for (std::size_t i = 0; i < mode_frequencies.size(); ++i) {
      const double dist = std::abs(std::abs(mode_frequencies[i]) - p.center);
      if (dist <= best) {
        best = dist;
        p.matched_mode = i;
      }
    }
  }
}

double estimation_error(const Spectrum& ref, const Spectrum& est) {
  if (ref.amplitudes.size() != est.amplitudes.size() || ref.n != est.n ||
      std::abs(ref.tau - est.tau) > 1e-12 * std::max(1.0, std::abs(ref.tau))) {
    throw Error(ErrorCode::GridMismatch, "spectra are on different grids");
  }
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < ref.amplitudes.size(); ++k) {
    const double r = std::abs(ref.amplitudes[k]);
    const double e = std::abs(est.amplitudes[k]);
    num += (r - e) * (r - e);
    den += r * r;
  }
  if (den == 0.0) throw Error(ErrorCode::EmptySeries, "reference spectrum is zero");
  return std::sqrt(num / den);
}

double fold_frequency(double omega, double tau) {
  const double half = std::numbers::pi / tau;
  const double period = 2.0 * half;
  double r = std::fmod(omega + half, period);
  if (r < 0.0) r += period;
  return std::abs(r - half);
}

SamplingDiagnostic validate_frequencies(const std::vector<double>& omegas, double tau) {
  if (!(tau > 0.0)) throw Error(ErrorCode::OutOfRange, "sampling period must be positive");
  SamplingDiagnostic d;
  d.nyquist = std::numbers::pi / tau;
  const double slack = 1e-12 * d.nyquist;
  for (double w : omegas) {
    const double aw = std::abs(w);
    d.max_frequency = std::max(d.max_frequency, aw);
    if (aw > d.nyquist + slack) {
      d.pass = false;
      d.aliased.push_back({aw, fold_frequency(aw, tau)});
    }
  }
  std::sort(d.aliased.begin(), d.aliased.end(),
            [](const AliasedMode& a, const AliasedMode& b) { return a.omega < b.omega; });
  d.aliased.erase(std::unique(d.aliased.begin(), d.aliased.end(),
                              [&](const AliasedMode& a, const AliasedMode& b) {
                                return std::abs(a.omega - b.omega) <= slack;
                              }),
                  d.aliased.end());
  return d;
}

SamplingDiagnostic validate_sampling(const BathModel& bath, double tau) {
  std::vector<double> omegas;
  for (const Mode& m : build_mode_table(bath)) omegas.push_back(m.omega);
  SamplingDiagnostic d = validate_frequencies(omegas, tau);
  d.two_b_norm = 2.0 * spectral_norm(bath.b_op);
  return d;
}

Spectrum line_kernel(double omega0, double phase, double damping, double tau, std::size_t n) {
  std::vector<double> v(n);
  double env = 1.0;
  for (std::size_t m = 1; m <= n; ++m) {
    v[m - 1] = env * std::cos(static_cast<double>(m) * omega0 * tau + phase);
    env *= damping;
  }
  return dft_samples(v, tau);
}

Complex broadened_line(double omega, double omega0, double phase, double damping, double tau) {
  Complex acc = 0.0;
  for (int s : {1, -1}) {
    const Complex z = std::polar(1.0, (omega + s * omega0) * tau);
    acc += std::polar(1.0, s * phase) * z / (1.0 - damping * z);
  }
  return 0.5 * tau * acc;
}

}  // namespace qspec
