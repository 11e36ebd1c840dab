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

#include "qspec/free_evolver.hpp"

#include "qspec/error.hpp"

namespace qspec {
namespace {

std::optional<Eigen::VectorXcd> diagonal_of(const Operator& u) {
  const Eigen::VectorXcd d = u.diagonal();
  Operator off = u;
  off.diagonal().setZero();
  if (off.cwiseAbs().maxCoeff() == 0.0) return d;
  return std::nullopt;
}

void require_unitary(const Operator& u) {
  if (!is_square(u)) throw Error(ErrorCode::DimensionMismatch, "propagator must be square");
  const Operator id = Operator::Identity(u.rows(), u.cols());
  if (max_abs(u.adjoint() * u - id) > 1e-10) {
    throw Error(ErrorCode::InvalidState, "propagator is not unitary");
  }
}

}  // namespace

FreeEvolver FreeEvolver::unitary(Operator u) {
  require_unitary(u);
  FreeEvolver f;
  f.kind_ = Kind::Unitary;
  f.dim_ = u.rows();
  f.diag_[0] = f.diag_[1] = diagonal_of(u);
  f.u_[1] = u;
  f.u_[0] = std::move(u);
  return f;
}

FreeEvolver FreeEvolver::conditional(Operator u_plus, Operator u_minus) {
  require_unitary(u_plus);
  require_unitary(u_minus);
  if (u_plus.rows() != u_minus.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "conditional propagators differ in size");
  }
  FreeEvolver f;
  f.kind_ = Kind::Conditional;
  f.dim_ = u_plus.rows();
  f.diag_[0] = diagonal_of(u_plus);
  f.diag_[1] = diagonal_of(u_minus);
  f.u_[0] = std::move(u_plus);
  f.u_[1] = std::move(u_minus);
  return f;
}

FreeEvolver FreeEvolver::superoperator(SuperOperator s) {
  FreeEvolver f;
  f.kind_ = Kind::Superoperator;
  f.dim_ = s.dim();
  f.s_ = std::move(s);
  return f;
}

void FreeEvolver::apply_inplace(Operator& x, int a, Operator& work) const {
  if (kind_ == Kind::Superoperator) {
    const Index d = dim_;
    // Row-major vectorization of x equals the column-major storage of x^T.
    work = x.transpose();
    const Eigen::Map<const Eigen::VectorXcd> xt(work.data(), d * d);
    Eigen::VectorXcd out = s_.matrix() * xt;
    x = Eigen::Map<Operator>(out.data(), d, d).transpose();
    return;
  }
  const int b = a & 1;
  if (diag_[b]) {
    const Eigen::VectorXcd& u = *diag_[b];
    x = u.asDiagonal() * x * u.conjugate().asDiagonal();
    return;
  }
  work.noalias() = u_[b] * x;
  x.noalias() = work * u_[b].adjoint();
}

Operator FreeEvolver::apply(const Operator& x, int a) const {
  if (x.rows() != dim_ || x.cols() != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "free evolution applied to operator of other size");
  }
  Operator out = x;
  Operator work(dim_, dim_);
  apply_inplace(out, a, work);
  return out;
}

SuperOperator FreeEvolver::branch_superop(int a) const {
  if (kind_ == Kind::Superoperator) return s_;
  return unitary_superop(u_[a & 1]);
}

}  // namespace qspec
