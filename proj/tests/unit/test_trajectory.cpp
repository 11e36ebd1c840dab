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

#include <cmath>

#include "qspec/baths.hpp"
#include "qspec/error.hpp"
#include "qspec/trajectory.hpp"
#include "support.hpp"

using namespace qspec;

namespace {

RimCycle qubit_cycle(const BathModel& b, double tau1, double tau) {
  RimConfig cfg;
  cfg.tau1 = tau1;
  return RimCycle(build_rim_channel(b, cfg), FreeEvolver::unitary(expm_hermitian(b.b_op, tau - tau1)),
                  tau);
}

TrajectoryRecord record_of(std::vector<std::int8_t> outcomes) {
  TrajectoryRecord r;
  r.outcomes = std::move(outcomes);
  return r;
}

}  // namespace

TEST_CASE("sample plan examples") {
  CHECK(plan_samples(1.0, 2.0 / std::exp(2.0)).n_samples == 4);
  CHECK(plan_samples(0.01, 0.05).n_samples == 73778);
  CHECK(plan_samples(0.02, 0.1).n_samples == 14979);
  CHECK_THROWS_AS((void)plan_samples(0.0, 0.1), Error);
  CHECK_THROWS_AS((void)plan_samples(0.1, 1.0), Error);
  CHECK_THROWS_AS((void)plan_samples(-0.1, 0.1), Error);
}

TEST_CASE("halving delta quadruples the sample count") {
  for (double eps : {0.01, 0.1, 0.3}) {
    for (double delta : {0.2, 0.05, 0.01}) {
      const double n1 = static_cast<double>(plan_samples(delta, eps).n_samples);
      const double n2 = static_cast<double>(plan_samples(delta / 2, eps).n_samples);
      CHECK(n2 / n1 == doctest::Approx(4.0).epsilon(4.0 / n1));
      CHECK(n1 >= (2.0 / (delta * delta)) * std::log(2.0 / eps));
    }
  }
}

TEST_CASE("A = 0 gives fair coin flips") {
  const BathModel b = qubit_bath(0.0, 1.0);
  const RimCycle cyc = qubit_cycle(b, 0.2, 0.9);
  MonteCarloOptions opts;
  opts.n_samples = 100000;
  opts.master_seed = 5;
  opts.keep_records = true;
  const auto res = run_monte_carlo(cyc, b.rho0, 3, opts);
  double sum = 0.0;
  for (const auto& r : res.records) sum += r.outcomes[0];
  const double mean = sum / static_cast<double>(opts.n_samples);
  CHECK(std::abs(mean) < 3.0 / std::sqrt(static_cast<double>(opts.n_samples)));
}

TEST_CASE("fixed seed reproduces the outcome string") {
  std::mt19937_64 rng(51);
  BathModel b;
  b.a_op = 0.5 * test::random_hermitian(3, rng);
  b.b_op = test::random_hermitian(3, rng);
  b.rho0 = test::random_density(3, rng);
  const RimCycle cyc = qubit_cycle(b, 0.3, 0.8);
  const auto r1 = sample_trajectory(cyc, b.rho0, 200, 1234);
  const auto r2 = sample_trajectory(cyc, b.rho0, 200, 1234);
  const auto r3 = sample_trajectory(cyc, b.rho0, 200, 1235);
  CHECK(r1.outcomes.size() == 201);
  CHECK(r1.outcomes == r2.outcomes);
  CHECK(r1.outcomes != r3.outcomes);
  for (auto o : r1.outcomes) CHECK((o == 1 || o == -1));
}

TEST_CASE("first outcome follows the Born rule") {
  std::mt19937_64 rng(52);
  BathModel b;
  b.a_op = test::random_hermitian(2, rng);
  b.b_op = test::random_hermitian(2, rng);
  b.rho0 = test::random_density(2, rng);
  RimConfig cfg;
  cfg.tau1 = 0.4;
  const KrausChannel ch = build_rim_channel(b, cfg);
  const double p0 = (ch.kraus_ops[0] * b.rho0 * ch.kraus_ops[0].adjoint()).trace().real();
  CHECK(std::abs(p0 - 0.5) > 0.01);

  const RimCycle cyc = qubit_cycle(b, cfg.tau1, 0.9);
  MonteCarloOptions opts;
  opts.n_samples = 100000;
  opts.master_seed = 77;
  opts.keep_records = true;
  const auto res = run_monte_carlo(cyc, b.rho0, 1, opts);
  double zeros = 0.0;
  for (const auto& r : res.records) zeros += r.outcomes[0] > 0 ? 1.0 : 0.0;
  const double n = static_cast<double>(opts.n_samples);
  CHECK(std::abs(zeros / n - p0) < 3.0 * std::sqrt(p0 * (1.0 - p0) / n));
}

TEST_CASE("estimate_correlation trivial cases") {
  const auto ones = estimate_correlation({record_of({1, 1, 1, 1})}, 3, 0.5);
  for (double v : ones.values) CHECK(v == 1.0);
  CHECK(ones.provenance == Provenance::MonteCarlo);
  CHECK(ones.n_samples == 1);

  const auto half = estimate_correlation({record_of({1, 1, 1}), record_of({1, -1, 1})}, 2, 1.0);
  CHECK(half.values[0] == 0.0);
  CHECK(half.values[1] == 1.0);

  CHECK_THROWS_AS((void)estimate_correlation({}, 3, 1.0), Error);
}

TEST_CASE("lag-averaged estimate uses every pair") {
  const auto s = estimate_correlation({record_of({1, -1, 1, 1})}, 3, 1.0, true);
  // lag 1 pairs: (1,-1), (-1,1), (1,1) -> -1/3
  CHECK(s.values[0] == doctest::Approx(-1.0 / 3.0));
  // lag 2 pairs: (1,1), (-1,1) -> 0
  CHECK(s.values[1] == doctest::Approx(0.0));
  CHECK(s.values[2] == doctest::Approx(1.0));
}

TEST_CASE("accumulator merge is exact") {
  CorrelationAccumulator a(2), b(2), all(2);
  const std::vector<TrajectoryRecord> recs{record_of({1, 1, -1}), record_of({-1, 1, 1}),
                                           record_of({1, -1, -1})};
  a.add(recs[0]);
  b.add(recs[1]);
  b.add(recs[2]);
  for (const auto& r : recs) all.add(r);
  a.merge(b);
  CHECK(a.count() == 3);
  CHECK(a.series(1.0).values == all.series(1.0).values);
}

TEST_CASE("estimate tracks the exact channel") {
  const BathModel b = qubit_bath(0.5, 1.0);
  const double tau1 = 0.4, tau = 0.9;
  const RimCycle cyc = qubit_cycle(b, tau1, tau);
  const std::size_t n = 16;
  const auto exact = exact_cycle_correlation(cyc, b.rho0, n);
  MonteCarloOptions opts;
  opts.n_samples = 20000;
  opts.master_seed = 3;
  const auto mc = run_monte_carlo(cyc, b.rho0, n, opts);
  CHECK(mc.series.n_samples == opts.n_samples);
  const double sigma = 1.0 / std::sqrt(static_cast<double>(opts.n_samples));
  for (std::size_t m = 0; m < n; ++m) CHECK(std::abs(mc.series.values[m] - exact.values[m]) < 5.0 * sigma);
}

TEST_CASE("results do not depend on the thread count") {
  const BathModel b = qubit_bath(0.3, 1.0);
  const RimCycle cyc = qubit_cycle(b, 0.3, 0.9);
  MonteCarloOptions opts;
  opts.n_samples = 3000;
  opts.master_seed = 11;
  opts.threads = 1;
  const auto one = run_monte_carlo(cyc, b.rho0, 10, opts);
  opts.threads = 3;
  const auto three = run_monte_carlo(cyc, b.rho0, 10, opts);
  CHECK(one.series.values == three.series.values);
}

TEST_CASE("trajectory seeds are independent") {
  CHECK(trajectory_seed(1, 0) != trajectory_seed(1, 1));
  CHECK(trajectory_seed(1, 0) != trajectory_seed(2, 0));
  CHECK(trajectory_seed(9, 4) == trajectory_seed(9, 4));

  // Fair coins from neighbouring trajectory indices are uncorrelated.
  const BathModel b = qubit_bath(0.0, 1.0);
  const RimCycle cyc = qubit_cycle(b, 0.2, 0.9);
  MonteCarloOptions opts;
  opts.n_samples = 40000;
  opts.master_seed = 2024;
  opts.keep_records = true;
  const auto res = run_monte_carlo(cyc, b.rho0, 1, opts);
  double cross = 0.0;
  for (std::size_t k = 0; k + 1 < res.records.size(); ++k) {
    cross += res.records[k].outcomes[0] * res.records[k + 1].outcomes[0];
  }
  const double n = static_cast<double>(res.records.size() - 1);
  CHECK(std::abs(cross / n) < 3.0 / std::sqrt(n));
}

TEST_CASE("sampled states stay valid") {
  std::mt19937_64 rng(53);
  BathModel b;
  b.a_op = test::random_hermitian(4, rng);
  b.b_op = test::random_hermitian(4, rng);
  b.rho0 = test::random_density(4, rng);
  const RimCycle cyc = qubit_cycle(b, 0.5, 1.0);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto r = sample_trajectory(cyc, b.rho0, 300, s);
    CHECK(r.outcomes.size() == 301);
    CHECK(r.renormalizations == 0);
  }
}
