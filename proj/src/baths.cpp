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

#include "qspec/baths.hpp"

#include <cmath>
#include <string>

#include "qspec/error.hpp"
#include "qspec/spin.hpp"

namespace qspec {

double larmor_13c(double tesla) {
  return 2.0 * std::numbers::pi * kGamma13CMHzPerTesla * tesla;
}

double dipolar_prefactor_13c(double r_angstrom) {
  constexpr double mu0_over_4pi = 1e-7;           // T m / A
  constexpr double hbar = 1.054571817e-34;        // J s
  const double gamma = 2.0 * std::numbers::pi * kGamma13CMHzPerTesla * 1e6;  // rad / (s T)
  const double r = r_angstrom * 1e-10;
  const double rad_per_s = mu0_over_4pi * gamma * gamma * hbar / (r * r * r);
  return rad_per_s * 1e-6;
}

// ---------------------------------------------------------------- bosons

Index thermal_levels_needed(double beta, double omega, double tol) {
  if (!(beta > 0.0) || !(omega > 0.0)) {
    throw Error(ErrorCode::OutOfRange, "thermal truncation needs beta > 0 and omega > 0");
  }
  const double n = std::log(tol) / (-beta * omega);
  return std::max<Index>(1, static_cast<Index>(std::ceil(n - 1e-12)));
}

Index occupation_levels_needed(double mean_occupation, double tol) {
  if (!(mean_occupation > 0.0) || !(tol > 0.0 && tol < 1.0)) {
    throw Error(ErrorCode::OutOfRange, "occupation truncation needs m > 0 and 0 < tol < 1");
  }
  const double n = std::log(tol) / -std::log1p(1.0 / mean_occupation);
  return std::max<Index>(1, static_cast<Index>(std::ceil(n - 1e-12)));
}

double bose_occupation(double beta, double omega) { return 1.0 / std::expm1(beta * omega); }

BathModel qubit_bath(double a, double b) {
  BathModel bath;
  bath.a_op = a * pauli_x();
  bath.b_op = b * pauli_z();
  bath.rho0 = Operator::Identity(2, 2) / 2.0;
  bath.label = "qubit";
  bath.a_norm_eff = std::abs(a);
  return bath;
}

BathModel boson_mode_bath(double omega, double coupling, double beta, Index levels) {
  const Operator b = annihilation(levels);
  BathModel m;
  m.a_op = coupling * (b + b.adjoint());
  m.b_op = omega * number_op(levels);
  m.rho0 = Operator::Zero(levels, levels);
  double z = 0.0;
  for (Index n = 0; n < levels; ++n) z += std::exp(-beta * omega * static_cast<double>(n));
  for (Index n = 0; n < levels; ++n) {
    m.rho0(n, n) = std::exp(-beta * omega * static_cast<double>(n)) / z;
  }
  m.a_norm_eff = effective_norm(m);
  m.label = "boson-mode";
  return m;
}

SpinBosonBath build_spin_boson(const SpinBosonSpec& spec) {
  if (spec.n_modes < 1) throw Error(ErrorCode::OutOfRange, "need at least one mode");
  if (!(spec.beta > 0.0)) throw Error(ErrorCode::OutOfRange, "beta must be positive");
  if (spec.n_max != 0 && spec.n_max < 2) throw Error(ErrorCode::OutOfRange, "n_max must be >= 2");
  SpinBosonBath out;
  out.spec = spec;
  const double dw = spec.omega_max / spec.n_modes;
  for (int l = 1; l <= spec.n_modes; ++l) {
    const double w = l * dw;
    const double j = spec.spectral_density ? spec.spectral_density(w) : spec.alpha * w;
    const double g = std::sqrt(j * dw);
    const double occupation = bose_occupation(spec.beta, w);
    const double heating = static_cast<double>(std::max(spec.n_cycles, 0)) * g * g * spec.tau1 * spec.tau1;
    const Index needed = heating > 0.0
                             ? occupation_levels_needed(occupation + heating, spec.tail_tolerance)
                             : thermal_levels_needed(spec.beta, w, spec.tail_tolerance);
    Index levels;
    if (spec.n_max > 0) {
      levels = spec.n_max;
      if (levels < needed) {
        throw Error(ErrorCode::TruncationInsufficient,
                    "mode " + std::to_string(l) + " needs n_max >= " + std::to_string(needed));
      }
    } else {
      levels = needed + spec.guard_levels;
    }
    BosonMode mode;
    mode.omega = w;
    mode.coupling = g;
    mode.occupation = occupation;
    mode.bath = boson_mode_bath(w, mode.coupling, spec.beta, levels);
    mode.bath.label = "boson-mode-" + std::to_string(l);
    out.modes.push_back(std::move(mode));
  }
  return out;
}

BathModel spin_boson_tensor_bath(const SpinBosonBath& bath, Index max_dim) {
  Index total = 1;
  for (const auto& m : bath.modes) {
    total *= m.bath.dim();
    if (total > max_dim) throw Error(ErrorCode::DimensionTooLarge, "tensor bath too large");
  }
  BathModel out;
  out.a_op = Operator::Zero(total, total);
  out.b_op = Operator::Zero(total, total);
  out.rho0 = Operator::Identity(1, 1);
  for (std::size_t k = 0; k < bath.modes.size(); ++k) {
    Index left = 1, right = 1;
    for (std::size_t q = 0; q < k; ++q) left *= bath.modes[q].bath.dim();
    for (std::size_t q = k + 1; q < bath.modes.size(); ++q) right *= bath.modes[q].bath.dim();
    const Operator il = Operator::Identity(left, left);
    const Operator ir = Operator::Identity(right, right);
    out.a_op += kron(kron(il, bath.modes[k].bath.a_op), ir);
    out.b_op += kron(kron(il, bath.modes[k].bath.b_op), ir);
    out.rho0 = kron(out.rho0, bath.modes[k].bath.rho0);
  }
  out.a_norm_eff = effective_norm(out);
  out.label = "spin-boson-tensor";
  return out;
}

SuperOperator exact_boson_channel(double omega, double coupling, Index levels,
                                  const RimConfig& cfg) {
  if (!(omega > 0.0)) throw Error(ErrorCode::OutOfRange, "mode frequency must be positive");
  const Operator b = annihilation(levels);
  const Complex delta = std::polar(1.0, omega * cfg.tau1) - 1.0;
  const Complex pref = coupling / Complex(0.0, omega);
  const Operator d = pref * (b.adjoint() * delta - b * std::conj(delta));
  const Eigen::MatrixXcd dhat = commutator_superop(d);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (dhat + dhat.adjoint()));
  const Eigen::VectorXd c = es.eigenvalues().array().cos();
  const Eigen::MatrixXcd cos_d =
      es.eigenvectors() * c.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  const SuperOperator ub = unitary_superop(expm_hermitian(omega * number_op(levels), cfg.tau1));
  return {ub.matrix() * cos_d, levels};
}

// ---------------------------------------------------------- central spin

Eigen::MatrixXd dipolar_couplings(const std::vector<Eigen::Vector3d>& positions) {
  const Index n = static_cast<Index>(positions.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index k = j + 1; k < n; ++k) {
      const Eigen::Vector3d r = positions[static_cast<std::size_t>(k)] -
                                positions[static_cast<std::size_t>(j)];
      const double dist = r.norm();
      if (dist <= 0.0) throw Error(ErrorCode::InconsistentSpec, "coincident spin positions");
      const double c = r.z() / dist;
      d(j, k) = d(k, j) = dipolar_prefactor_13c(dist) * (1.0 - 3.0 * c * c);
    }
  }
  return d;
}

double effective_larmor(const Eigen::Vector3d& h, double larmor) {
  return 0.5 * (h + Eigen::Vector3d(0.0, 0.0, 2.0 * larmor)).norm();
}

double transverse_hyperfine_sq(const Eigen::Vector3d& h, double larmor) {
  const Eigen::Vector3d field = h + Eigen::Vector3d(0.0, 0.0, 2.0 * larmor);
  const double fn = field.norm();
  if (fn == 0.0) return h.squaredNorm();
  const double par = h.dot(field / fn);
  return h.squaredNorm() - par * par;
}

BathModel build_central_spin(const CentralSpinSpec& spec) {
  const int n = static_cast<int>(spec.hyperfine.size());
  if (n < 1) throw Error(ErrorCode::EmptyInput, "no nuclear spins");
  if (n > kMaxCentralSpins) throw Error(ErrorCode::DimensionTooLarge, "too many nuclear spins");
  if (spec.larmor < 0.0) throw Error(ErrorCode::OutOfRange, "Larmor frequency must be >= 0");

  Eigen::MatrixXd dmat = Eigen::MatrixXd::Zero(n, n);
  if (!spec.positions.empty()) {
    if (static_cast<int>(spec.positions.size()) != n) {
      throw Error(ErrorCode::InconsistentSpec, "positions and hyperfine lists differ in length");
    }
    dmat = dipolar_couplings(spec.positions);
    if (spec.coupling && (spec.coupling->rows() != n || spec.coupling->cols() != n ||
                          (*spec.coupling - dmat).cwiseAbs().maxCoeff() >
                              1e-9 * std::max(1.0, dmat.cwiseAbs().maxCoeff()))) {
      throw Error(ErrorCode::InconsistentSpec, "explicit couplings disagree with positions");
    }
  } else if (spec.coupling) {
    dmat = *spec.coupling;
    if (dmat.rows() != n || dmat.cols() != n) {
      throw Error(ErrorCode::InconsistentSpec, "coupling matrix has the wrong size");
    }
    if ((dmat - dmat.transpose()).cwiseAbs().maxCoeff() > 0.0 ||
        dmat.diagonal().cwiseAbs().maxCoeff() > 0.0) {
      throw Error(ErrorCode::InconsistentSpec, "couplings must be symmetric with zero diagonal");
    }
  }

  const SpinHalf& s = spin_half();
  const Index dim = Index{1} << n;
  std::vector<Operator> ix, iy, iz;
  for (int k = 0; k < n; ++k) {
    ix.push_back(embed(s.ix, k, n));
    iy.push_back(embed(s.iy, k, n));
    iz.push_back(embed(s.iz, k, n));
  }
  Operator a = Operator::Zero(dim, dim);
  Operator zeeman = Operator::Zero(dim, dim);
  Operator hyper = Operator::Zero(dim, dim);
  Operator dip = Operator::Zero(dim, dim);
  for (int k = 0; k < n; ++k) {
    const Eigen::Vector3d& h = spec.hyperfine[static_cast<std::size_t>(k)];
    zeeman -= spec.larmor * iz[static_cast<std::size_t>(k)];
    hyper += h.x() * ix[static_cast<std::size_t>(k)] + h.y() * iy[static_cast<std::size_t>(k)] +
             h.z() * iz[static_cast<std::size_t>(k)];
    if (spec.subspace == ProbeSubspace::PlusMinusOne) a += h.z() * iz[static_cast<std::size_t>(k)];
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      const auto uj = static_cast<std::size_t>(j);
      const auto uk = static_cast<std::size_t>(k);
      dip += dmat(j, k) * (iz[uj] * iz[uk] - 0.5 * (ix[uj] * ix[uk] + iy[uj] * iy[uk]));
    }
  }
  BathModel m;
  if (spec.subspace == ProbeSubspace::PlusMinusOne) {
    m.a_op = a;
    m.b_op = zeeman + dip;
    m.b_commuting = zeeman;
    m.label = "central-spin-pm1";
  } else {
    m.a_op = -0.5 * hyper;
    m.b_op = -0.5 * hyper + zeeman + dip;
    m.label = "central-spin-0m1";
  }
  m.rho0 = Operator::Identity(dim, dim) / static_cast<double>(dim);
  m.a_norm_eff = effective_norm(m);
  return m;
}

// ------------------------------------------------------------ dissipation

namespace {

int spin_sites(Index dim) {
  int n = 0;
  while ((Index{1} << n) < dim) ++n;
  if ((Index{1} << n) != dim) {
    throw Error(ErrorCode::DimensionMismatch, "dissipation needs a bath of spin-1/2 sites");
  }
  return n;
}

std::vector<Operator> jump_operators(Index dim, const DissipationSpec& spec) {
  if (spec.gamma1 < 0.0 || spec.gamma_phi < 0.0) {
    throw Error(ErrorCode::OutOfRange, "dissipation rates must be non-negative");
  }
  const int n = spin_sites(dim);
  std::vector<Operator> jumps;
  const SpinHalf& s = spin_half();
  for (int k = 0; k < n; ++k) {
    if (spec.gamma1 > 0.0) jumps.push_back(std::sqrt(spec.gamma1) * embed(s.lower, k, n));
    if (spec.gamma_phi > 0.0) jumps.push_back(std::sqrt(spec.gamma_phi) * embed(pauli_z(), k, n));
  }
  return jumps;
}

Eigen::MatrixXcd generator_from(const Operator& h, const std::vector<Operator>& jumps) {
  const Index d = h.rows();
  const Operator id = Operator::Identity(d, d);
  Eigen::MatrixXcd l = Complex(0.0, -1.0) * commutator_superop(h);
  for (const Operator& x : jumps) {
    const Operator xx = x.adjoint() * x;
    l += kron(x, x.conjugate()) - 0.5 * (kron(xx, id) + kron(id, xx.transpose()));
  }
  return l;
}

// exp(t L) for L built from h and jumps, assembled in the eigenbasis of h so
// that the coherent part is diagonal and scaling and squaring stays accurate
// over long gaps.
Eigen::MatrixXcd lindblad_exponential(const Operator& h, const std::vector<Operator>& jumps,
                                      double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (h + h.adjoint()));
  const Operator& v = es.eigenvectors();
  const Operator hd = es.eigenvalues().cast<Complex>().asDiagonal();
  std::vector<Operator> rotated;
  rotated.reserve(jumps.size());
  for (const Operator& x : jumps) rotated.push_back(v.adjoint() * x * v);
  const Eigen::MatrixXcd w = kron(v, v.conjugate());
  return w * expm_general(t * generator_from(hd, rotated)) * w.adjoint();
}

bool splittable(const BathModel& bath, const std::vector<Operator>& jumps) {
  const Operator& c = bath.b_commuting;
  if (c.size() == 0 || c.rows() != bath.dim()) return false;
  if (!is_hermitian(c)) return false;
  const double scale = std::max(1.0, max_abs(c)) * std::max(1.0, max_abs(bath.b_op));
  if (max_abs(c * bath.b_op - bath.b_op * c) > 1e-12 * scale) return false;
  for (const Operator& x : jumps) {
    const Operator comm = c * x - x * c;
    // [C, X] must be a scalar multiple of X.
    Index r = 0, q = 0;
    const double xmax = x.cwiseAbs().maxCoeff(&r, &q);
    if (xmax == 0.0) continue;
    const Complex ratio = comm(r, q) / x(r, q);
    if (max_abs(comm - ratio * x) > 1e-12 * std::max(1.0, max_abs(c)) * xmax) return false;
  }
  return true;
}

}  // namespace

Eigen::MatrixXcd lindblad_generator(const BathModel& bath, const DissipationSpec& spec) {
  require_hermitian(bath.b_op, "B");
  return generator_from(bath.b_op, jump_operators(bath.dim(), spec));
}

SuperOperator dissipative_free_evolution(const BathModel& bath, const DissipationSpec& spec,
                                         double tau2) {
  require_hermitian(bath.b_op, "B");
  if (!(tau2 >= 0.0)) throw Error(ErrorCode::OutOfRange, "tau2 must be non-negative");
  const Index d = bath.dim();
  const std::vector<Operator> jumps = jump_operators(d, spec);
  if (splittable(bath, jumps)) {
    const Operator rest = bath.b_op - bath.b_commuting;
    const SuperOperator u = unitary_superop(expm_hermitian(bath.b_commuting, tau2));
    return {u.matrix() * lindblad_exponential(rest, jumps, tau2), d};
  }
  return {lindblad_exponential(bath.b_op, jumps, tau2), d};
}

}  // namespace qspec
