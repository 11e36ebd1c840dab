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

#include "qspec/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qspec/error.hpp"

namespace qspec {

bool weak_condition(const BathModel& bath, const RimConfig& cfg) {
  const double norm = bath.a_norm_eff > 0.0 ? bath.a_norm_eff : spectral_norm(bath.a_op);
  return cfg.tau1 * norm <= cfg.weak_threshold;
}

KrausChannel build_rim_channel(const Operator& a, const Operator& b, const RimConfig& cfg) {
  require_hermitian(a, "A");
  require_hermitian(b, "B");
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "A and B differ in size");
  if (!(cfg.tau1 >= 0.0) || !std::isfinite(cfg.tau1)) {
    throw Error(ErrorCode::OutOfRange, "tau1 must be finite and non-negative");
  }
  const Operator u0 = expm_hermitian(a + b, cfg.tau1);
  const Operator u1 = expm_hermitian(b - a, cfg.tau1);
  const Complex phase = std::polar(1.0, cfg.delta_phi);
  KrausChannel ch;
  ch.dim = a.rows();
  ch.kraus_ops.push_back(0.5 * (u0 - phase * u1));
  ch.kraus_ops.push_back(0.5 * (u0 + phase * u1));
  return ch;
}

KrausChannel build_rim_channel(const BathModel& bath, const RimConfig& cfg) {
  return build_rim_channel(bath.a_op, bath.b_op, cfg);
}

double completeness_error(const KrausChannel& ch) {
  Operator sum = Operator::Zero(ch.dim, ch.dim);
  for (const auto& m : ch.kraus_ops) sum += m.adjoint() * m;
  return max_abs(sum - Operator::Identity(ch.dim, ch.dim));
}

SuperOperator kraus_superop(const Operator& m) { return {kron(m, m.conjugate()), m.rows()}; }

SuperOperator build_free_evolution_channel(const BathModel& bath, double tau2) {
  if (!(tau2 >= 0.0)) throw Error(ErrorCode::OutOfRange, "tau2 must be non-negative");
  return unitary_superop(expm_hermitian(bath.b_op, tau2));
}

double trace_preservation_error(const SuperOperator& s) {
  const Eigen::RowVectorXcd id = identity_functional(s.dim());
  return (id * s.matrix() - id).cwiseAbs().maxCoeff();
}

ConcatenatedChannel concatenate(const KrausChannel& rim, const FreeEvolver& free, double tau) {
  if (rim.kraus_ops.size() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "RIM channel needs exactly two Kraus operators");
  }
  if (free.dim() != rim.dim) {
    throw Error(ErrorCode::DimensionMismatch, "free evolution and RIM differ in size");
  }
  ConcatenatedChannel ch;
  ch.tau = tau;
  ch.measurement_superops = {kraus_superop(rim.kraus_ops[0]), kraus_superop(rim.kraus_ops[1])};
  const SuperOperator f0m0 = free.branch_superop(0) * ch.measurement_superops[0];
  const SuperOperator f1m1 = free.branch_superop(1) * ch.measurement_superops[1];
  ch.superop = f0m0 + f1m1;
  ch.p_hat = f0m0 - f1m1;
  return ch;
}

ConcatenatedChannel concatenate(const KrausChannel& rim, const SuperOperator& free, double tau) {
  return concatenate(rim, FreeEvolver::superoperator(free), tau);
}

namespace {

double norm1(const Eigen::MatrixXcd& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); }

}  // namespace

SpectralDecomposition spectral_decompose(const SuperOperator& s) {
  const Eigen::MatrixXcd& m = s.matrix();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, true);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::NonDiagonalizable, "eigenvalue iteration did not converge");
  }
  const Index n = m.rows();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  const Eigen::VectorXcd& w = es.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) {
    const double ax = std::abs(w(x));
    const double ay = std::abs(w(y));
    if (std::abs(ax - ay) > 1e-12) return ax > ay;
    return std::arg(w(x)) < std::arg(w(y));
  });

  SpectralDecomposition dec;
  dec.eigenvalues.resize(n);
  dec.right.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    dec.eigenvalues(k) = w(src);
    Eigen::VectorXcd v = es.eigenvectors().col(src);
    const double nv = v.norm();
    dec.right.col(k) = nv > 0.0 ? Eigen::VectorXcd(v / nv) : v;
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(dec.right);
  dec.left = lu.inverse();
  dec.condition_estimate = norm1(dec.right) * norm1(dec.left);
  if (!std::isfinite(dec.condition_estimate) || dec.condition_estimate > kMaxEigenvectorCondition) {
    throw Error(ErrorCode::NonDiagonalizable, "eigenvector matrix condition estimate too large");
  }
  return dec;
}

SpectralDecomposition spectral_decompose(const ConcatenatedChannel& ch) {
  return spectral_decompose(ch.superop);
}

BathEigenbasis bath_eigenbasis(const Operator& b) {
  require_hermitian(b, "B");
  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (b + b.adjoint()));
  return {es.eigenvalues(), es.eigenvectors()};
}

Eigen::VectorXcd pair_vector(const BathEigenbasis& eb, Index i, Index j) {
  const Eigen::VectorXcd vi = eb.vectors.col(i);
  const Eigen::VectorXcd vj = eb.vectors.col(j).conjugate();
  const Index d = vi.size();
  Eigen::VectorXcd out(d * d);
  for (Index m = 0; m < d; ++m) out.segment(m * d, d) = vi(m) * vj;
  return out;
}

Eigen::MatrixXcd measurement_generator(const Operator& a) {
  const Eigen::MatrixXcd ahat = commutator_superop(a);
  return -0.5 * ahat * ahat;
}

Eigen::MatrixXd generator_diagonal(const Operator& a, const BathEigenbasis& eb) {
  const Operator ab = eb.vectors.adjoint() * a * eb.vectors;
  const Operator a2 = ab * ab;
  const Index d = ab.rows();
  Eigen::MatrixXd out(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      const double v = a2(i, i).real() + a2(j, j).real() - 2.0 * ab(i, i).real() * ab(j, j).real();
      out(i, j) = -0.5 * v;
    }
  }
  return out;
}

PerturbativeChannel perturbative_channel(const BathModel& bath, const RimConfig& cfg, double tau) {
  require_hermitian(bath.a_op, "A");
  require_hermitian(bath.b_op, "B");
  PerturbativeChannel out;
  out.weak_condition_met = weak_condition(bath, cfg);
  out.generator = measurement_generator(bath.a_op);
  const Index d = bath.dim();
  const SuperOperator ub = unitary_superop(expm_hermitian(bath.b_op, tau));
  const Eigen::MatrixXcd inner =
      Eigen::MatrixXcd::Identity(d * d, d * d) + cfg.tau1 * cfg.tau1 * out.generator;
  out.superop = SuperOperator(ub.matrix() * inner, d);
  return out;
}

std::vector<PairMatch> match_pairs(const SpectralDecomposition& dec, const BathEigenbasis& eb) {
  const Index d = eb.vectors.rows();
  const Index n = d * d;
  if (dec.right.rows() != n) {
    throw Error(ErrorCode::DimensionMismatch, "decomposition does not match bath dimension");
  }
  Eigen::MatrixXcd pairs(n, n);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) pairs.col(i * d + j) = pair_vector(eb, i, j);
  const Eigen::MatrixXd overlap = (pairs.adjoint() * dec.right).cwiseAbs();

  struct Entry {
    double value;
    Index pair;
    Index k;
  };
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(n * n));
  for (Index p = 0; p < n; ++p)
    for (Index k = 0; k < n; ++k) entries.push_back({overlap(p, k), p, k});
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& x, const Entry& y) { return x.value > y.value; });
  std::vector<char> pair_used(static_cast<std::size_t>(n), 0);
  std::vector<char> k_used(static_cast<std::size_t>(n), 0);
  std::vector<PairMatch> out;
  out.reserve(static_cast<std::size_t>(n));
  for (const Entry& e : entries) {
    if (pair_used[static_cast<std::size_t>(e.pair)] || k_used[static_cast<std::size_t>(e.k)]) continue;
    pair_used[static_cast<std::size_t>(e.pair)] = 1;
    k_used[static_cast<std::size_t>(e.k)] = 1;
    out.push_back({e.pair / d, e.pair % d, e.k, e.value});
    if (static_cast<Index>(out.size()) == n) break;
  }
  std::sort(out.begin(), out.end(), [](const PairMatch& x, const PairMatch& y) {
    return x.i != y.i ? x.i < y.i : x.j < y.j;
  });
  return out;
}

RimCycle::RimCycle(const KrausChannel& rim, FreeEvolver free, double tau, double prune_tol)
    : dim_(rim.dim), tau_(tau), free_(std::move(free)) {
  if (rim.kraus_ops.size() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "RIM channel needs exactly two Kraus operators");
  }
  if (free_.dim() != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "free evolution and RIM differ in size");
  }
  for (int a = 0; a < 2; ++a) {
    dense_[a] = rim.kraus_ops[static_cast<std::size_t>(a)];
    effect_[a] = dense_[a].adjoint() * dense_[a];
  }
  observable_ = effect_[0] - effect_[1];

  // Sparse storage pays off only for large, mostly-zero operators.
  if (dim_ >= 48) {
    Index nnz = 0;
    for (int a = 0; a < 2; ++a) {
      const double cut = prune_tol * max_abs(dense_[a]);
      nnz += (dense_[a].cwiseAbs().array() > cut).count();
    }
    if (nnz < dim_ * dim_ / 2) {
      sparse_ = true;
      for (int a = 0; a < 2; ++a) {
        const double cut = prune_tol * max_abs(dense_[a]);
        sparse_ops_[a] = dense_[a].sparseView(1.0, cut);
        sparse_adj_[a] = Eigen::SparseMatrix<Complex, Eigen::RowMajor>(sparse_ops_[a].adjoint());
      }
    }
  }
}

void RimCycle::measure(const Operator& x, int a, Operator& out, Operator& work) const {
  const int b = a & 1;
  if (sparse_) {
    work.noalias() = sparse_ops_[b] * x;
    out.noalias() = work * sparse_adj_[b];
  } else {
    work.noalias() = dense_[b] * x;
    out.noalias() = work * dense_[b].adjoint();
  }
}

Operator RimCycle::combine(const Operator& x, bool signed_sum) const {
  if (x.rows() != dim_ || x.cols() != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "cycle applied to operator of other size");
  }
  Operator work(dim_, dim_);
  Operator branch(dim_, dim_);
  Operator total = Operator::Zero(dim_, dim_);
  if (!free_.outcome_dependent()) {
    measure(x, 0, branch, work);
    total = branch;
    measure(x, 1, branch, work);
    if (signed_sum) total -= branch; else total += branch;
    free_.apply_inplace(total, 0, work);
    return total;
  }
  for (int a = 0; a < 2; ++a) {
    measure(x, a, branch, work);
    free_.apply_inplace(branch, a, work);
    if (signed_sum && a == 1) total -= branch; else total += branch;
  }
  return total;
}

Operator RimCycle::cycle(const Operator& x) const { return combine(x, false); }
Operator RimCycle::signed_cycle(const Operator& x) const { return combine(x, true); }

}  // namespace qspec
