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

#include "qspec/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>

#include <toml.hpp>

#include "qspec/error.hpp"
#include "qspec/trajectory.hpp"

namespace qspec {

std::string_view to_string(BathKind k) noexcept {
  switch (k) {
    case BathKind::Qubit: return "qubit";
    case BathKind::SpinBoson: return "spin_boson";
    case BathKind::CentralSpin: return "central_spin";
  }
  return "unknown";
}

std::string_view to_string(SignalModel m) noexcept {
  switch (m) {
    case SignalModel::Exact: return "exact";
    case SignalModel::Weak: return "weak";
    case SignalModel::Analytic: return "analytic";
    case SignalModel::Corr: return "corr";
  }
  return "unknown";
}

std::string_view to_string(EvolverMode m) noexcept {
  switch (m) {
    case EvolverMode::FreeConditional: return "free";
    case EvolverMode::Cpmg: return "cpmg";
    case EvolverMode::IdealB: return "ideal_b";
  }
  return "unknown";
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

class Section {
 public:
  Section(const toml::table* t, std::string name) : t_(t), name_(std::move(name)) {}

  [[nodiscard]] bool present() const { return t_ != nullptr; }

  void allow(std::initializer_list<std::string_view> keys) const {
    if (!t_) return;
    for (const auto& [k, v] : *t_) {
      if (std::find(keys.begin(), keys.end(), k.str()) == keys.end()) {
        fail("unknown key '" + key(k.str()) + "'");
      }
    }
  }

  [[nodiscard]] const toml::node* node(std::string_view k) const {
    return t_ ? t_->get(k) : nullptr;
  }

  [[nodiscard]] std::optional<double> number(std::string_view k) const {
    const toml::node* n = node(k);
    if (!n) return std::nullopt;
    if (!n->is_number()) fail("'" + key(k) + "' must be a number");
    const double v = *n->value<double>();
    if (!std::isfinite(v)) fail("'" + key(k) + "' must be finite");
    return v;
  }

  [[nodiscard]] double number(std::string_view k, double fallback) const {
    return number(k).value_or(fallback);
  }

  [[nodiscard]] double required_number(std::string_view k) const {
    auto v = number(k);
    if (!v) fail("missing required key '" + key(k) + "'");
    return *v;
  }

  [[nodiscard]] std::optional<std::int64_t> integer(std::string_view k) const {
    const toml::node* n = node(k);
    if (!n) return std::nullopt;
    if (!n->is_integer()) fail("'" + key(k) + "' must be an integer");
    return *n->value<std::int64_t>();
  }

  [[nodiscard]] std::uint64_t unsigned_integer(std::string_view k, std::uint64_t fallback) const {
    auto v = integer(k);
    if (!v) return fallback;
    if (*v < 0) fail("'" + key(k) + "' must be non-negative");
    return static_cast<std::uint64_t>(*v);
  }

  [[nodiscard]] std::optional<std::string> text(std::string_view k) const {
    const toml::node* n = node(k);
    if (!n) return std::nullopt;
    if (!n->is_string()) fail("'" + key(k) + "' must be a string");
    return *n->value<std::string>();
  }

  [[nodiscard]] bool boolean(std::string_view k, bool fallback) const {
    const toml::node* n = node(k);
    if (!n) return fallback;
    if (!n->is_boolean()) fail("'" + key(k) + "' must be true or false");
    return *n->value<bool>();
  }

  template <typename T>
  [[nodiscard]] std::vector<T> list(std::string_view k) const {
    std::vector<T> out;
    const toml::node* n = node(k);
    if (!n) return out;
    const toml::array* arr = n->as_array();
    if (!arr) fail("'" + key(k) + "' must be an array");
    for (const toml::node& e : *arr) {
      if constexpr (std::is_floating_point_v<T>) {
        if (!e.is_number()) fail("'" + key(k) + "' must hold numbers");
        out.push_back(*e.value<double>());
      } else {
        if (!e.is_integer() || *e.value<std::int64_t>() < 0) {
          fail("'" + key(k) + "' must hold non-negative integers");
        }
        out.push_back(static_cast<T>(*e.value<std::int64_t>()));
      }
    }
    return out;
  }

  [[nodiscard]] std::vector<Eigen::Vector3d> vectors(std::string_view k) const {
    std::vector<Eigen::Vector3d> out;
    const toml::node* n = node(k);
    if (!n) return out;
    const toml::array* arr = n->as_array();
    if (!arr) fail("'" + key(k) + "' must be an array of [x, y, z]");
    for (const toml::node& e : *arr) {
      const toml::array* row = e.as_array();
      if (!row || row->size() != 3) fail("'" + key(k) + "' entries must be [x, y, z]");
      Eigen::Vector3d v;
      for (int c = 0; c < 3; ++c) {
        const toml::node* x = row->get(static_cast<std::size_t>(c));
        if (!x->is_number()) fail("'" + key(k) + "' entries must be numeric");
        v[c] = *x->value<double>();
      }
      out.push_back(v);
    }
    return out;
  }

  template <typename E>
  [[nodiscard]] E choice(std::string_view k, E fallback,
                         std::initializer_list<std::pair<std::string_view, E>> options) const {
    auto s = text(k);
    if (!s) return fallback;
    for (const auto& [name, value] : options) {
      if (*s == name) return value;
    }
    std::string allowed;
    for (const auto& o : options) allowed += (allowed.empty() ? "" : ", ") + std::string(o.first);
    fail("'" + key(k) + "' must be one of: " + allowed);
  }

 private:
  [[nodiscard]] std::string key(std::string_view k) const { return name_ + "." + std::string(k); }

  const toml::table* t_;
  std::string name_;
};

Section section(const toml::table& root, std::string_view name) {
  const toml::node* n = root.get(name);
  if (n && !n->is_table()) fail("'" + std::string(name) + "' must be a table");
  return Section(n ? n->as_table() : nullptr, std::string(name));
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) fail(std::string(what) + " must be positive");
}

void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0)) fail(std::string(what) + " must be non-negative");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  toml::table root;
  try {
    root = toml::parse(text, std::string_view(source));
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << source << ":" << e.source().begin.line << ":" << e.source().begin.column << ": "
       << e.description();
    fail(os.str());
  }
  for (const auto& [k, v] : root) {
    static constexpr std::string_view kTop[] = {"units",    "bath",   "rim",    "protocol",
                                                "sampling", "output", "compare"};
    if (std::find(std::begin(kTop), std::end(kTop), k.str()) == std::end(kTop)) {
      fail("unknown section '" + std::string(k.str()) + "'");
    }
  }

  ExperimentConfig cfg;

  const Section units = section(root, "units");
  units.allow({"time", "hyperfine"});
  cfg.units = units.choice<TimeUnits>("time", TimeUnits::Microseconds,
                                      {{"us", TimeUnits::Microseconds},
                                       {"dimensionless", TimeUnits::Dimensionless}});
  cfg.central.hyperfine_in_khz =
      units.choice<bool>("hyperfine", cfg.units == TimeUnits::Microseconds,
                         {{"kHz", true}, {"rad_per_us", false}, {"dimensionless", false}});

  const Section bath = section(root, "bath");
  if (!bath.present()) fail("missing section 'bath'");
  cfg.kind = bath.choice<BathKind>("kind", BathKind::Qubit,
                                   {{"qubit", BathKind::Qubit},
                                    {"spin_boson", BathKind::SpinBoson},
                                    {"central_spin", BathKind::CentralSpin}});
  switch (cfg.kind) {
    case BathKind::Qubit:
      bath.allow({"kind", "a", "b"});
      cfg.qubit.a = bath.required_number("a");
      cfg.qubit.b = bath.number("b", 0.0);
      break;
    case BathKind::SpinBoson: {
      bath.allow({"kind", "alpha", "omega_max", "n_modes", "beta", "n_max", "tail_tolerance",
                  "guard_levels"});
      auto& sb = cfg.spin_boson;
      sb.alpha = bath.required_number("alpha");
      sb.omega_max = bath.required_number("omega_max");
      sb.n_modes = static_cast<int>(bath.integer("n_modes").value_or(0));
      sb.beta = bath.required_number("beta");
      sb.n_max = static_cast<int>(bath.integer("n_max").value_or(0));
      sb.tail_tolerance = bath.number("tail_tolerance", sb.tail_tolerance);
      sb.guard_levels = static_cast<int>(bath.integer("guard_levels").value_or(sb.guard_levels));
      require_nonnegative(sb.alpha, "bath.alpha");
      require_positive(sb.omega_max, "bath.omega_max");
      require_positive(sb.beta, "bath.beta");
      if (sb.n_modes < 1) fail("bath.n_modes must be at least 1");
      if (sb.n_max < 0 || sb.guard_levels < 0) fail("bath.n_max and guard_levels must be >= 0");
      break;
    }
    case BathKind::CentralSpin: {
      bath.allow({"kind", "hyperfine", "positions", "field_tesla", "larmor", "subspace"});
      auto& cs = cfg.central;
      cs.hyperfine = bath.vectors("hyperfine");
      cs.positions = bath.vectors("positions");
      cs.field_tesla = bath.number("field_tesla");
      cs.larmor = bath.number("larmor");
      cs.subspace = bath.choice<ProbeSubspace>("subspace", ProbeSubspace::PlusMinusOne,
                                               {{"pm1", ProbeSubspace::PlusMinusOne},
                                                {"0m1", ProbeSubspace::ZeroMinusOne}});
      if (cs.hyperfine.empty()) fail("bath.hyperfine must list at least one spin");
      if (!cs.positions.empty() && cs.positions.size() != cs.hyperfine.size()) {
        fail("bath.positions must have one entry per hyperfine vector");
      }
      if (!cs.field_tesla && !cs.larmor) fail("bath needs field_tesla or larmor");
      if (cs.field_tesla && cfg.units != TimeUnits::Microseconds) {
        fail("bath.field_tesla requires units.time = \"us\"");
      }
      if (!cs.positions.empty() && cfg.units != TimeUnits::Microseconds) {
        fail("bath.positions requires units.time = \"us\"");
      }
      break;
    }
  }

  const Section rim = section(root, "rim");
  rim.allow({"tau1", "delta_phi"});
  cfg.rim.tau1 = rim.required_number("tau1");
  cfg.rim.delta_phi = rim.number("delta_phi", cfg.rim.delta_phi);
  require_positive(cfg.rim.tau1, "rim.tau1");

  const Section proto = section(root, "protocol");
  proto.allow({"tau", "tau2", "n_points", "evolver", "dd_pulses", "gamma1", "gamma_phi", "model",
               "spin_boson_tensor"});
  auto& p = cfg.protocol;
  const auto tau = proto.number("tau");
  const auto tau2 = proto.number("tau2");
  if (tau.has_value() == tau2.has_value()) fail("protocol needs exactly one of tau and tau2");
  p.tau2 = tau2 ? *tau2 : *tau - cfg.rim.tau1;
  p.tau_given = tau;
  require_nonnegative(p.tau2, "protocol.tau2 (tau - tau1)");
  const auto n_points = proto.integer("n_points");
  if (!n_points || *n_points < 1) fail("protocol.n_points must be a positive integer");
  p.n_points = static_cast<std::size_t>(*n_points);
  p.evolver = proto.choice<EvolverMode>("evolver", EvolverMode::IdealB,
                                        {{"ideal_b", EvolverMode::IdealB},
                                         {"free", EvolverMode::FreeConditional},
                                         {"cpmg", EvolverMode::Cpmg}});
  p.dd_pulses = static_cast<int>(proto.integer("dd_pulses").value_or(0));
  if (p.evolver == EvolverMode::Cpmg && (p.dd_pulses < 2 || p.dd_pulses % 2 != 0)) {
    fail("protocol.dd_pulses must be a positive even number for evolver = \"cpmg\"");
  }
  if (p.evolver != EvolverMode::Cpmg && p.dd_pulses != 0) {
    fail("protocol.dd_pulses requires evolver = \"cpmg\"");
  }
  p.dissipation.gamma1 = proto.number("gamma1", 0.0);
  p.dissipation.gamma_phi = proto.number("gamma_phi", 0.0);
  require_nonnegative(p.dissipation.gamma1, "protocol.gamma1");
  require_nonnegative(p.dissipation.gamma_phi, "protocol.gamma_phi");
  const bool dissipative = p.dissipation.gamma1 > 0.0 || p.dissipation.gamma_phi > 0.0;
  if (dissipative && p.evolver != EvolverMode::IdealB) {
    fail("dissipation requires protocol.evolver = \"ideal_b\"");
  }
  if (dissipative && cfg.kind == BathKind::SpinBoson) {
    fail("dissipation is defined for spin baths only");
  }
  p.model = proto.choice<SignalModel>("model", SignalModel::Exact,
                                      {{"exact", SignalModel::Exact},
                                       {"weak", SignalModel::Weak},
                                       {"analytic", SignalModel::Analytic},
                                       {"corr", SignalModel::Corr}});
  p.spin_boson_tensor = proto.boolean("spin_boson_tensor", false);

  const Section samp = section(root, "sampling");
  samp.allow({"mode", "n_samples", "delta", "epsilon", "seed", "lag_averaged"});
  auto& s = cfg.sampling;
  s.mode = samp.choice<SamplingMode>("mode", SamplingMode::Exact,
                                     {{"exact", SamplingMode::Exact},
                                      {"monte-carlo", SamplingMode::MonteCarlo}});
  if (auto n = samp.integer("n_samples")) {
    if (*n < 1) fail("sampling.n_samples must be positive");
    s.n_samples = static_cast<std::uint64_t>(*n);
  }
  s.delta = samp.number("delta");
  s.epsilon = samp.number("epsilon");
  s.seed = samp.unsigned_integer("seed", 0);
  s.lag_averaged = samp.boolean("lag_averaged", false);
  if (s.n_samples && (s.delta || s.epsilon)) {
    fail("sampling takes n_samples or (delta, epsilon), not both");
  }
  if (s.delta.has_value() != s.epsilon.has_value()) {
    fail("sampling.delta and sampling.epsilon go together");
  }
  if (s.mode == SamplingMode::MonteCarlo && !s.n_samples && !s.delta) {
    fail("monte-carlo sampling needs n_samples or (delta, epsilon)");
  }
  if (s.delta && !(*s.delta > 0.0 && *s.delta <= 1.0 && *s.epsilon > 0.0 && *s.epsilon < 1.0)) {
    fail("sampling needs 0 < delta <= 1 and 0 < epsilon < 1");
  }

  const Section out = section(root, "output");
  out.allow({"directory", "format", "peak_threshold", "window", "trajectories"});
  auto& o = cfg.output;
  o.directory = out.text("directory").value_or(o.directory);
  o.format = out.choice<OutputFormat>("format", OutputFormat::Csv,
                                      {{"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}});
  o.peak_threshold = out.number("peak_threshold", o.peak_threshold);
  if (!(o.peak_threshold > 0.0 && o.peak_threshold < 1.0)) {
    fail("output.peak_threshold must lie in (0, 1)");
  }
  o.window = out.choice<Window>("window", Window::None,
                                {{"none", Window::None}, {"hann", Window::Hann}});
  o.trajectories = out.boolean("trajectories", false);

  const Section cmp = section(root, "compare");
  cmp.allow({"n_points", "n_samples", "tau1", "corr_tau1_factors", "gamma_tau", "repetitions",
             "noise"});
  auto& c = cfg.compare;
  c.grid.n_points = cmp.list<std::size_t>("n_points");
  c.grid.n_samples = cmp.list<std::uint64_t>("n_samples");
  c.grid.tau1 = cmp.list<double>("tau1");
  if (cmp.node("corr_tau1_factors")) c.grid.corr_tau1_factors = cmp.list<double>("corr_tau1_factors");
  if (cmp.node("gamma_tau")) c.gamma_tau = cmp.list<double>("gamma_tau");
  c.grid.tau = p.tau(cfg.rim);
  c.repetitions = static_cast<int>(cmp.integer("repetitions").value_or(1));
  c.noise = cmp.choice<NoiseModel>("noise", NoiseModel::Gaussian,
                                   {{"gaussian", NoiseModel::Gaussian},
                                    {"monte-carlo", NoiseModel::MonteCarlo}});
  if (c.repetitions < 1) fail("compare.repetitions must be positive");
  for (std::size_t n : c.grid.n_points) {
    if (n < 1) fail("compare.n_points entries must be positive");
  }
  for (std::uint64_t n : c.grid.n_samples) {
    if (n < 1) fail("compare.n_samples entries must be positive");
  }
  for (double t : c.grid.tau1) {
    if (!(t > 0.0)) fail("compare.tau1 entries must be positive");
  }
  for (double f : c.grid.corr_tau1_factors) {
    if (!(f > 0.0)) fail("compare.corr_tau1_factors entries must be positive");
  }
  for (double g : c.gamma_tau) {
    if (!(g >= 0.0)) fail("compare.gamma_tau entries must be non-negative");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

CentralSpinSpec resolve_central_spin(const ExperimentConfig& cfg) {
  const CentralSpinConfig& c = cfg.central;
  CentralSpinSpec spec;
  const double scale = c.hyperfine_in_khz ? khz_to_rad_per_us(1.0) : 1.0;
  for (const auto& h : c.hyperfine) spec.hyperfine.push_back(h * scale);
  spec.positions = c.positions;
  spec.larmor = c.larmor ? *c.larmor : larmor_13c(*c.field_tesla);
  spec.subspace = c.subspace;
  return spec;
}

std::uint64_t resolved_samples(const SamplingConfig& s) {
  if (s.n_samples) return *s.n_samples;
  if (s.delta) return plan_samples(*s.delta, *s.epsilon).n_samples;
  return 0;
}

}  // namespace qspec
