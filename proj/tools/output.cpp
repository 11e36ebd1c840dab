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

#include "output.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

namespace qspec::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::system_error(errno, std::generic_category(), "cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw std::system_error(errno, std::generic_category(), "write failed " + path.string());
}

ordered_json vec3_list(const std::vector<Eigen::Vector3d>& v) {
  ordered_json arr = ordered_json::array();
  for (const auto& x : v) arr.push_back({x[0], x[1], x[2]});
  return arr;
}

std::string_view to_string(SamplingMode m) {
  return m == SamplingMode::Exact ? "exact" : "monte-carlo";
}

std::string_view to_string(NoiseModel m) {
  return m == NoiseModel::Gaussian ? "gaussian" : "monte-carlo";
}

}  // namespace

void write_json(const fs::path& path, const ordered_json& j) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
  finish(out, path);
}

ordered_json config_to_json(const ExperimentConfig& cfg) {
  ordered_json j;
  j["units"] = {{"time", cfg.units == TimeUnits::Microseconds ? "us" : "dimensionless"}};
  ordered_json bath;
  bath["kind"] = to_string(cfg.kind);
  switch (cfg.kind) {
    case BathKind::Qubit:
      bath["a"] = cfg.qubit.a;
      bath["b"] = cfg.qubit.b;
      break;
    case BathKind::SpinBoson: {
      const auto& sb = cfg.spin_boson;
      bath["alpha"] = sb.alpha;
      bath["omega_max"] = sb.omega_max;
      bath["n_modes"] = sb.n_modes;
      bath["beta"] = sb.beta;
      bath["n_max"] = sb.n_max;
      bath["tail_tolerance"] = sb.tail_tolerance;
      bath["guard_levels"] = sb.guard_levels;
      break;
    }
    case BathKind::CentralSpin: {
      const CentralSpinSpec cs = resolve_central_spin(cfg);
      bath["hyperfine_rad_per_us"] = vec3_list(cs.hyperfine);
      bath["positions_angstrom"] = vec3_list(cs.positions);
      bath["larmor"] = cs.larmor;
      bath["subspace"] = cs.subspace == ProbeSubspace::PlusMinusOne ? "pm1" : "0m1";
      break;
    }
  }
  j["bath"] = bath;
  j["rim"] = {{"tau1", cfg.rim.tau1}, {"delta_phi", cfg.rim.delta_phi}};
  const auto& p = cfg.protocol;
  j["protocol"] = {{"tau2", p.tau2},
                   {"tau", p.tau(cfg.rim)},
                   {"n_points", p.n_points},
                   {"evolver", to_string(p.evolver)},
                   {"dd_pulses", p.dd_pulses},
                   {"gamma1", p.dissipation.gamma1},
                   {"gamma_phi", p.dissipation.gamma_phi},
                   {"model", to_string(p.model)},
                   {"spin_boson_tensor", p.spin_boson_tensor}};
  const auto& s = cfg.sampling;
  ordered_json samp = {{"mode", to_string(s.mode)}, {"seed", s.seed}};
  if (s.n_samples) samp["n_samples"] = *s.n_samples;
  if (s.delta) samp["delta"] = *s.delta;
  if (s.epsilon) samp["epsilon"] = *s.epsilon;
  samp["lag_averaged"] = s.lag_averaged;
  j["sampling"] = samp;
  const auto& o = cfg.output;
  j["output"] = {{"directory", o.directory},
                 {"format", o.format == OutputFormat::Csv ? "csv" : "json"},
                 {"peak_threshold", o.peak_threshold},
                 {"window", o.window == Window::Hann ? "hann" : "none"},
                 {"trajectories", o.trajectories}};
  const auto& c = cfg.compare;
  j["compare"] = {{"n_points", c.grid.n_points},
                  {"n_samples", c.grid.n_samples},
                  {"tau1", c.grid.tau1},
                  {"corr_tau1_factors", c.grid.corr_tau1_factors},
                  {"gamma_tau", c.gamma_tau},
                  {"repetitions", c.repetitions},
                  {"noise", to_string(c.noise)}};
  return j;
}

std::string write_correlation(const fs::path& dir, const CorrelationSeries& s, OutputFormat fmt) {
  if (fmt == OutputFormat::Json) {
    ordered_json rows = ordered_json::array();
    for (std::size_t m = 1; m <= s.size(); ++m) {
      rows.push_back({{"m", m},
                      {"t", s.time(m)},
                      {"value", s.values[m - 1]},
                      {"provenance", to_string(s.provenance)}});
    }
    write_json(dir / "correlation.json", rows);
    return "correlation.json";
  }
  const fs::path path = dir / "correlation.csv";
  std::ofstream out = open_out(path);
  out << "m,t,value,provenance\n";
  const std::string prov(to_string(s.provenance));
  for (std::size_t m = 1; m <= s.size(); ++m) {
    out << m << ',' << format_double(s.time(m)) << ',' << format_double(s.values[m - 1]) << ','
        << prov << '\n';
  }
  finish(out, path);
  return "correlation.csv";
}

std::string write_spectrum(const fs::path& dir, const Spectrum& s, OutputFormat fmt) {
  if (fmt == OutputFormat::Json) {
    ordered_json rows = ordered_json::array();
    for (std::size_t k = 0; k < s.amplitudes.size(); ++k) {
      rows.push_back({{"omega", s.frequencies[k]},
                      {"re", s.amplitudes[k].real()},
                      {"im", s.amplitudes[k].imag()},
                      {"magnitude", std::abs(s.amplitudes[k])}});
    }
    write_json(dir / "spectrum.json", rows);
    return "spectrum.json";
  }
  const fs::path path = dir / "spectrum.csv";
  std::ofstream out = open_out(path);
  out << "omega,re,im,magnitude\n";
  for (std::size_t k = 0; k < s.amplitudes.size(); ++k) {
    out << format_double(s.frequencies[k]) << ',' << format_double(s.amplitudes[k].real()) << ','
        << format_double(s.amplitudes[k].imag()) << ',' << format_double(std::abs(s.amplitudes[k]))
        << '\n';
  }
  finish(out, path);
  return "spectrum.csv";
}

std::string write_peaks(const fs::path& dir, const std::vector<PeakAnnotation>& peaks,
                        OutputFormat fmt) {
  if (fmt == OutputFormat::Json) {
    ordered_json rows = ordered_json::array();
    for (const auto& p : peaks) {
      ordered_json row = {{"center", p.center}, {"height", p.height}, {"fwhm", p.fwhm}};
      row["matched_mode"] = p.matched_mode ? ordered_json(*p.matched_mode) : ordered_json(nullptr);
      rows.push_back(row);
    }
    write_json(dir / "peaks.json", rows);
    return "peaks.json";
  }
  const fs::path path = dir / "peaks.csv";
  std::ofstream out = open_out(path);
  out << "center,height,fwhm,matched_mode\n";
  for (const auto& p : peaks) {
    out << format_double(p.center) << ',' << format_double(p.height) << ','
        << format_double(p.fwhm) << ',';
    if (p.matched_mode) out << *p.matched_mode;
    out << '\n';
  }
  finish(out, path);
  return "peaks.csv";
}

std::string write_trajectories(const fs::path& dir, const std::vector<TrajectoryRecord>& records) {
  const fs::path path = dir / "trajectories.csv";
  std::ofstream out = open_out(path);
  out << "index,seed,renormalizations,outcomes\n";
  std::string line;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    line.assign(r.outcomes.size(), '+');
    for (std::size_t k = 0; k < r.outcomes.size(); ++k) {
      if (r.outcomes[k] < 0) line[k] = '-';
    }
    out << i << ',' << r.seed << ',' << r.renormalizations << ',' << line << '\n';
  }
  finish(out, path);
  return "trajectories.csv";
}

std::string write_comparison(const fs::path& dir, const std::vector<ComparisonRun>& runs,
                             OutputFormat fmt) {
  if (fmt == OutputFormat::Json) {
    ordered_json rows = ordered_json::array();
    for (const auto& run : runs) {
      for (const auto& r : run.reports) {
        rows.push_back({{"gamma_tau", run.gamma_tau},
                        {"method", to_string(r.method)},
                        {"n_points", r.n_points},
                        {"tau", r.tau},
                        {"tau1", r.tau1},
                        {"n_samples", r.n_samples},
                        {"total_detection_time", r.total_detection_time},
                        {"resource_complexity", r.resource_complexity},
                        {"estimation_error", r.estimation_error},
                        {"error_spread", r.error_spread}});
      }
    }
    write_json(dir / "comparison.json", rows);
    return "comparison.json";
  }
  const fs::path path = dir / "comparison.csv";
  std::ofstream out = open_out(path);
  out << "gamma_tau,method,n_points,tau,tau1,n_samples,total_detection_time,"
         "resource_complexity,estimation_error,error_spread\n";
  for (const auto& run : runs) {
    for (const auto& r : run.reports) {
      out << format_double(run.gamma_tau) << ',' << to_string(r.method) << ',' << r.n_points << ','
          << format_double(r.tau) << ',' << format_double(r.tau1) << ',' << r.n_samples << ','
          << format_double(r.total_detection_time) << ',' << format_double(r.resource_complexity)
          << ',' << format_double(r.estimation_error) << ',' << format_double(r.error_spread)
          << '\n';
    }
  }
  finish(out, path);
  return "comparison.csv";
}

}  // namespace qspec::cli
