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

#include "qspec/operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "qspec/error.hpp"

namespace qspec {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonHermitianInput: return "NonHermitianInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonDiagonalizable: return "NonDiagonalizable";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::TruncationInsufficient: return "TruncationInsufficient";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::InconsistentSpec: return "InconsistentSpec";
    case ErrorCode::OddPulseCount: return "OddPulseCount";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

VectorizedOperator::VectorizedOperator(Eigen::VectorXcd entries, Index dim)
    : entries_(std::move(entries)), dim_(dim) {
  if (entries_.size() != dim_ * dim_) {
    throw Error(ErrorCode::DimensionMismatch, "vectorized operator length is not dim^2");
  }
}

SuperOperator::SuperOperator(Eigen::MatrixXcd matrix, Index dim)
    : matrix_(std::move(matrix)), dim_(dim) {
  if (matrix_.rows() != dim_ * dim_ || matrix_.cols() != dim_ * dim_) {
    throw Error(ErrorCode::DimensionMismatch, "superoperator matrix is not dim^2 x dim^2");
  }
}

SuperOperator SuperOperator::identity(Index dim) {
  return {Eigen::MatrixXcd::Identity(dim * dim, dim * dim), dim};
}

VectorizedOperator SuperOperator::apply(const VectorizedOperator& v) const {
  if (v.dim() != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "superoperator applied to operator of other dim");
  }
  return {matrix_ * v.entries(), dim_};
}

Operator SuperOperator::apply(const Operator& rho) const {
  return devectorize(apply(vectorize(rho)));
}

SuperOperator operator*(const SuperOperator& lhs, const SuperOperator& rhs) {
  if (lhs.dim_ != rhs.dim_) {
    throw Error(ErrorCode::DimensionMismatch, "composing superoperators of different dim");
  }
  return {lhs.matrix_ * rhs.matrix_, lhs.dim_};
}

SuperOperator operator+(const SuperOperator& lhs, const SuperOperator& rhs) {
  if (lhs.dim_ != rhs.dim_) {
    throw Error(ErrorCode::DimensionMismatch, "adding superoperators of different dim");
  }
  return {lhs.matrix_ + rhs.matrix_, lhs.dim_};
}

SuperOperator operator-(const SuperOperator& lhs, const SuperOperator& rhs) {
  if (lhs.dim_ != rhs.dim_) {
    throw Error(ErrorCode::DimensionMismatch, "subtracting superoperators of different dim");
  }
  return {lhs.matrix_ - rhs.matrix_, lhs.dim_};
}

bool is_square(const Operator& m) noexcept { return m.rows() == m.cols(); }

double max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Operator& m, double rel_tol) {
  if (!is_square(m)) return false;
  const double scale = max_abs(m);
  if (scale == 0.0) return true;
  return max_abs(m - m.adjoint()) <= rel_tol * scale;
}

void require_hermitian(const Operator& m, const char* what, double rel_tol) {
  if (!is_square(m)) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " is not square");
  }
  if (!is_hermitian(m, rel_tol)) {
    throw Error(ErrorCode::NonHermitianInput, std::string(what) + " is not Hermitian");
  }
}

Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Operator expm_hermitian(const Operator& h, double t, double rel_tol) {
  require_hermitian(h, "exponent", rel_tol);
  if (t == 0.0) return Operator::Identity(h.rows(), h.cols());
  // Symmetrize so the solver sees an exactly Hermitian input.
  const Operator hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> es(hs);
  const Eigen::VectorXd& w = es.eigenvalues();
  Eigen::VectorXcd phases(w.size());
  for (Index k = 0; k < w.size(); ++k) phases(k) = std::polar(1.0, -w(k) * t);
  const Operator& v = es.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

Eigen::MatrixXcd expm_general(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix exponential of non-square matrix");
  }
  return m.exp();
}

VectorizedOperator vectorize(const Operator& m) {
  if (!is_square(m)) throw Error(ErrorCode::DimensionMismatch, "vectorize needs a square operator");
  const Index d = m.rows();
  Eigen::VectorXcd v(d * d);
  for (Index r = 0; r < d; ++r) {
    for (Index c = 0; c < d; ++c) v(r * d + c) = m(r, c);
  }
  return {std::move(v), d};
}

Operator devectorize(const VectorizedOperator& v) {
  const Index d = v.dim();
  Operator m(d, d);
  for (Index r = 0; r < d; ++r) {
    for (Index c = 0; c < d; ++c) m(r, c) = v.entries()(r * d + c);
  }
  return m;
}

SuperOperator sandwich_superop(const Operator& x, const Operator& y) {
  if (!is_square(x) || !is_square(y) || x.rows() != y.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "sandwich operands must be square and equal size");
  }
  return {kron(x, y.transpose()), x.rows()};
}

SuperOperator unitary_superop(const Operator& u) {
  if (!is_square(u)) throw Error(ErrorCode::DimensionMismatch, "unitary must be square");
  return {kron(u, u.conjugate()), u.rows()};
}

Eigen::MatrixXcd commutator_superop(const Operator& a) {
  const Index d = a.rows();
  const Operator id = Operator::Identity(d, d);
  return kron(a, id) - kron(id, a.transpose());
}

Eigen::MatrixXcd choi_matrix(const SuperOperator& phi) {
  const Index d = phi.dim();
  Eigen::MatrixXcd j(d * d, d * d);
  // J[(i,m),(j,n)] = Phi(|i><j|)_{mn} = S[m*d+n, i*d+j]
  for (Index i = 0; i < d; ++i)
    for (Index m = 0; m < d; ++m)
      for (Index jj = 0; jj < d; ++jj)
        for (Index n = 0; n < d; ++n)
          j(i * d + m, jj * d + n) = phi.matrix()(m * d + n, i * d + jj);
  return j;
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

Eigen::RowVectorXcd identity_functional(Index dim) {
  Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(dim * dim);
  for (Index i = 0; i < dim; ++i) row(i * dim + i) = 1.0;
  return row;
}

}  // namespace qspec
