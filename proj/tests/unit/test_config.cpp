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

#include <doctest.h>

#include <string>

#include "qspec/config.hpp"
#include "qspec/error.hpp"
#include "qspec/experiment.hpp"

using namespace qspec;

namespace {

const std::string kQubit = R"(
[units]
time = "dimensionless"

[bath]
kind = "qubit"
a = 0.1
b = 1.0

[rim]
tau1 = 0.2

[protocol]
tau = 0.9
n_points = 16
)";

bool config_error(const std::string& text) {
  try {
    (void)parse_config(text);
  } catch (const Error& e) {
    return e.code() == ErrorCode::ConfigError;
  }
  return false;
}

}  // namespace

TEST_CASE("minimal qubit configuration") {
  const ExperimentConfig cfg = parse_config(kQubit);
  CHECK(cfg.kind == BathKind::Qubit);
  CHECK(cfg.qubit.a == 0.1);
  CHECK(cfg.rim.tau1 == 0.2);
  CHECK(cfg.protocol.tau(cfg.rim) == 0.9);
  CHECK(cfg.protocol.tau2 == doctest::Approx(0.7));
  CHECK(cfg.protocol.evolver == EvolverMode::IdealB);
  CHECK(cfg.sampling.mode == SamplingMode::Exact);
  CHECK(cfg.output.format == OutputFormat::Csv);
}

TEST_CASE("malformed configurations are config errors") {
  CHECK(config_error("[bath\nkind = 1"));
  CHECK(config_error(kQubit + "\n[extra]\nx = 1\n"));
  CHECK(config_error(kQubit + "\n[sampling]\nmode = \"exact\"\nbogus = 3\n"));
  CHECK(config_error(kQubit + "\n[sampling]\nmode = \"sometimes\"\n"));
  CHECK(config_error(kQubit + "\n[sampling]\nmode = \"monte-carlo\"\n"));
  CHECK(config_error(kQubit + "\n[sampling]\nn_samples = 10\ndelta = 0.1\nepsilon = 0.1\n"));
  CHECK(config_error(kQubit + "\n[output]\npeak_threshold = 1.5\n"));

  std::string both = kQubit;
  both.replace(both.find("tau = 0.9"), 9, "tau = 0.9\ntau2 = 0.7");
  CHECK(config_error(both));

  std::string odd = kQubit;
  odd.replace(odd.find("n_points = 16"), 13, "n_points = 16\nevolver = \"cpmg\"\ndd_pulses = 3");
  CHECK(config_error(odd));

  std::string wrong_type = kQubit;
  wrong_type.replace(wrong_type.find("a = 0.1"), 7, "a = \"0.1\"");
  CHECK(config_error(wrong_type));

  CHECK_THROWS_AS((void)load_config("/nonexistent/qspec.toml"), Error);
}

TEST_CASE("sample count from the Hoeffding plan") {
  const ExperimentConfig cfg =
      parse_config(kQubit + "\n[sampling]\nmode = \"monte-carlo\"\ndelta = 0.02\nepsilon = 0.1\n");
  CHECK(resolved_samples(cfg.sampling) == 14979);
}

TEST_CASE("central spin units") {
  const ExperimentConfig cfg = parse_config(R"(
[units]
time = "us"
hyperfine = "kHz"

[bath]
kind = "central_spin"
subspace = "0m1"
field_tesla = 0.01
hyperfine = [[0.0, 0.0, 100.0]]

[rim]
tau1 = 1.0

[protocol]
tau2 = 3.0
n_points = 8
)");
  const CentralSpinSpec cs = resolve_central_spin(cfg);
  CHECK(cs.hyperfine[0].z() == doctest::Approx(khz_to_rad_per_us(100.0)));
  CHECK(cs.larmor == doctest::Approx(larmor_13c(0.01)));
  CHECK(cs.subspace == ProbeSubspace::ZeroMinusOne);
  CHECK(cfg.protocol.tau(cfg.rim) == doctest::Approx(4.0));
}

TEST_CASE("exact simulation of the qubit configuration") {
  const ExperimentConfig cfg = parse_config(kQubit);
  const SimulationResult res = run_simulation(cfg);
  CHECK(res.series.size() == 16);
  CHECK(res.series.provenance == Provenance::ExactChannel);
  CHECK(res.bath_dim == 2);
  CHECK(res.spectrum.amplitudes.size() == 17);
}

TEST_CASE("unsupported model combinations are rejected") {
  std::string weak_free = kQubit;
  weak_free.replace(weak_free.find("n_points = 16"), 13,
                    "n_points = 16\nmodel = \"weak\"\nevolver = \"free\"");
  CHECK_THROWS_AS((void)run_simulation(parse_config(weak_free)), Error);
}
