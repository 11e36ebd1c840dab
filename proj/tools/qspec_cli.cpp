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

// qspec: noise spectroscopy by repetitive weak measurements.
//
// Exit codes: 0 success, 1 I/O failure, 2 configuration error (or aliasing
// with --strict), 3 numerical failure.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "output.hpp"
#include "qspec/error.hpp"
#include "qspec/trajectory.hpp"

#ifndef QSPEC_VERSION
#define QSPEC_VERSION "unknown"
#endif

namespace {

namespace fs = std::filesystem;
using namespace qspec;
using nlohmann::ordered_json;

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> sampling;
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> samples;
  bool strict = false;
};

ExperimentConfig resolve(const Overrides& o) {
  ExperimentConfig cfg = load_config(o.config);
  if (o.seed) cfg.sampling.seed = *o.seed;
  if (o.out) cfg.output.directory = *o.out;
  if (o.format) cfg.output.format = *o.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  if (o.sampling) {
    cfg.sampling.mode = *o.sampling == "exact" ? SamplingMode::Exact : SamplingMode::MonteCarlo;
  }
  if (o.n) {
    if (*o.n < 1) throw Error(ErrorCode::ConfigError, "--n must be positive");
    cfg.protocol.n_points = *o.n;
  }
  if (o.samples) {
    if (*o.samples < 1) throw Error(ErrorCode::ConfigError, "--samples must be positive");
    cfg.sampling.n_samples = *o.samples;
    cfg.sampling.delta.reset();
    cfg.sampling.epsilon.reset();
  }
  if (cfg.sampling.mode == SamplingMode::MonteCarlo && resolved_samples(cfg.sampling) == 0) {
    throw Error(ErrorCode::ConfigError, "monte-carlo sampling needs n_samples or (delta, epsilon)");
  }
  return cfg;
}

ordered_json manifest_base(const std::string& command, const Overrides& o,
                           const ExperimentConfig& cfg) {
  ordered_json m;
  m["tool"] = "qspec";
  m["version"] = QSPEC_VERSION;
  m["command"] = command;
  m["config_file"] = o.config;
  m["seed"] = cfg.sampling.seed;
  m["config"] = cli::config_to_json(cfg);
  return m;
}

ordered_json diagnostic_json(const SamplingDiagnostic& d) {
  ordered_json aliased = ordered_json::array();
  for (const auto& a : d.aliased) aliased.push_back({{"omega", a.omega}, {"folded", a.folded}});
  return {{"pass", d.pass},
          {"nyquist", d.nyquist},
          {"max_frequency", d.max_frequency},
          {"two_b_norm", d.two_b_norm},
          {"aliased", aliased}};
}

int cmd_simulate(const Overrides& o) {
  const ExperimentConfig cfg = resolve(o);
  const SimulationResult res = run_simulation(cfg);
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';
  if (o.strict && !res.sampling.pass) {
    std::cerr << "error: aliasing detected and --strict given\n";
    return kExitConfig;
  }
  const fs::path dir(cfg.output.directory);
  fs::create_directories(dir);
  ordered_json files = ordered_json::array();
  files.push_back(cli::write_correlation(dir, res.series, cfg.output.format));
  files.push_back(cli::write_spectrum(dir, res.spectrum, cfg.output.format));
  files.push_back(cli::write_peaks(dir, res.peaks, cfg.output.format));
  if (cfg.output.trajectories && !res.records.empty()) {
    files.push_back(cli::write_trajectories(dir, res.records));
  }
  ordered_json m = manifest_base("simulate", o, cfg);
  m["n_samples"] = res.n_samples;
  m["renormalizations"] = res.renormalizations;
  m["bath_dim"] = res.bath_dim;
  m["total_detection_time"] = res.series.total_detection_time;
  m["spectrum_resolution"] = res.spectrum.resolution;
  m["mode_frequencies"] = res.mode_frequencies;
  m["sampling_check"] = diagnostic_json(res.sampling);
  m["warnings"] = res.warnings;
  m["outputs"] = files;
  cli::write_json(dir / "manifest.json", m);
  std::cout << "wrote " << files.size() + 1 << " files to " << dir.string() << '\n';
  return 0;
}

int cmd_compare(const Overrides& o) {
  const ExperimentConfig cfg = resolve(o);
  const auto runs = run_compare(cfg);
  const fs::path dir(cfg.output.directory);
  fs::create_directories(dir);
  ordered_json files = ordered_json::array();
  files.push_back(cli::write_comparison(dir, runs, cfg.output.format));
  ordered_json m = manifest_base("compare", o, cfg);
  m["outputs"] = files;
  cli::write_json(dir / "manifest.json", m);
  std::size_t rows = 0;
  for (const auto& r : runs) rows += r.reports.size();
  std::cout << "wrote " << rows << " comparison rows to " << (dir / files[0].get<std::string>()).string()
            << '\n';
  return 0;
}

int cmd_validate(const Overrides& o) {
  const ExperimentConfig cfg = resolve(o);
  const double tau = cfg.protocol.tau(cfg.rim);
  SamplingDiagnostic d;
  if (cfg.kind == BathKind::SpinBoson && !cfg.protocol.spin_boson_tensor) {
    std::vector<double> omegas;
    for (const auto& m : build_spin_boson(cfg.spin_boson).modes) omegas.push_back(m.omega);
    d = validate_frequencies(omegas, tau);
  } else {
    d = validate_sampling(build_bath(cfg), tau);
  }
  std::cout << "tau = " << cli::format_double(tau) << '\n'
            << "nyquist pi/tau = " << cli::format_double(d.nyquist) << '\n'
            << "max populated frequency = " << cli::format_double(d.max_frequency) << '\n';
  if (d.two_b_norm > 0.0) std::cout << "2||B|| = " << cli::format_double(d.two_b_norm) << '\n';
  for (const auto& a : d.aliased) {
    std::cout << "aliased: omega = " << cli::format_double(a.omega)
              << " folds to " << cli::format_double(a.folded) << '\n';
  }
  std::cout << (d.pass ? "sampling check passed" : "sampling check FAILED") << '\n';
  return d.pass || !o.strict ? 0 : kExitConfig;
}

int cmd_plan(double delta, double epsilon) {
  const SamplePlan p = plan_samples(delta, epsilon);
  std::cout << "delta = " << cli::format_double(p.delta) << '\n'
            << "epsilon = " << cli::format_double(p.epsilon) << '\n'
            << "n_samples = " << p.n_samples << '\n';
  return 0;
}

void add_run_options(CLI::App* sub, Overrides& o) {
  sub->add_option("-c,--config", o.config, "TOML experiment file")->required()->check(CLI::ExistingFile);
  sub->add_option("--seed", o.seed, "master seed (overrides sampling.seed)");
  sub->add_option("-o,--out", o.out, "output directory (overrides output.directory)");
  sub->add_option("--format", o.format, "artifact format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--strict", o.strict, "treat aliasing as an error");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noise spectroscopy through repetitive weak measurements"};
  app.set_version_flag("--version", QSPEC_VERSION);
  app.require_subcommand(1);
  Overrides o;

  CLI::App* sim = app.add_subcommand("simulate", "run one experiment and write its artifacts");
  add_run_options(sim, o);
  sim->add_option("--sampling", o.sampling, "exact expectation or trajectory sampling")
      ->check(CLI::IsMember({"exact", "monte-carlo"}));
  sim->add_option("--n", o.n, "number of correlation points (overrides protocol.n_points)");
  sim->add_option("--samples", o.samples, "trajectory count (overrides sampling)");

  CLI::App* cmp = app.add_subcommand("compare", "weak measurement vs correlation spectroscopy");
  add_run_options(cmp, o);

  CLI::App* val = app.add_subcommand("validate", "check the sampling period against the bath");
  add_run_options(val, o);

  double delta = 0.0, epsilon = 0.0;
  CLI::App* plan = app.add_subcommand("plan", "samples needed for accuracy delta at confidence 1 - epsilon");
  plan->add_option("--delta", delta, "accuracy")
      ->required()
      ->check(CLI::PositiveNumber & CLI::Range(0.0, 1.0));
  plan->add_option("--epsilon", epsilon, "failure probability")
      ->required()
      ->check(CLI::PositiveNumber & CLI::Range(0.0, 1.0, "(0, 1)") &
              CLI::Validator([](std::string& v) { return std::stod(v) < 1.0 ? "" : "must be below 1"; },
                             "", "below 1"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (sim->parsed()) return cmd_simulate(o);
    if (cmp->parsed()) return cmd_compare(o);
    if (val->parsed()) return cmd_validate(o);
    if (plan->parsed()) return cmd_plan(delta, epsilon);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::ConfigError ? kExitConfig : kExitNumerical;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::system_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitConfig;
}
