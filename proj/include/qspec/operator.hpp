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

#pragma once

// Dense complex linear algebra on a finite Hilbert space.
//
// Vectorization convention (used everywhere in this library): the operator
// entry (m, n) is stored at index m * d + n, i.e. |A>> = sum_mn A_mn |m>|n>.
// With that layout the map rho -> X rho Y is the matrix kron(X, Y^T).

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace qspec {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using Operator = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTolerance = 1e-12;

/// Operator in vectorized (Liouville) form, row-major index m * d + n.
class VectorizedOperator {
 public:
  VectorizedOperator() = default;
  VectorizedOperator(Eigen::VectorXcd entries, Index dim);

  [[nodiscard]] Index dim() const noexcept { return dim_; }
  [[nodiscard]] const Eigen::VectorXcd& entries() const noexcept { return entries_; }

 private:
  Eigen::VectorXcd entries_;
  Index dim_ = 0;
};

/// A linear map on operators, stored as a d^2 x d^2 matrix acting on
/// vectorized operators.
class SuperOperator {
 public:
  SuperOperator() = default;
  SuperOperator(Eigen::MatrixXcd matrix, Index dim);

  static SuperOperator identity(Index dim);

  [[nodiscard]] Index dim() const noexcept { return dim_; }
  [[nodiscard]] const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }

  [[nodiscard]] VectorizedOperator apply(const VectorizedOperator& v) const;
  [[nodiscard]] Operator apply(const Operator& rho) const;

  friend SuperOperator operator*(const SuperOperator& lhs, const SuperOperator& rhs);
  friend SuperOperator operator+(const SuperOperator& lhs, const SuperOperator& rhs);
  friend SuperOperator operator-(const SuperOperator& lhs, const SuperOperator& rhs);

 private:
  Eigen::MatrixXcd matrix_;
  Index dim_ = 0;
};

[[nodiscard]] bool is_square(const Operator& m) noexcept;
[[nodiscard]] bool is_hermitian(const Operator& m, double rel_tol = kHermitianTolerance);
void require_hermitian(const Operator& m, const char* what, double rel_tol = kHermitianTolerance);

/// Standard Kronecker product: (a (x) b)(i*db + k, j*db + l) = a(i,j) b(k,l).
[[nodiscard]] Operator kron(const Operator& a, const Operator& b);

/// e^{-i h t} for Hermitian h, by spectral mapping of the eigendecomposition.
[[nodiscard]] Operator expm_hermitian(const Operator& h, double t,
                                      double rel_tol = kHermitianTolerance);

/// e^{m} for a general square matrix (scaling and squaring, Pade order 13).
[[nodiscard]] Eigen::MatrixXcd expm_general(const Eigen::MatrixXcd& m);

[[nodiscard]] VectorizedOperator vectorize(const Operator& m);
[[nodiscard]] Operator devectorize(const VectorizedOperator& v);

/// Superoperator of rho -> x rho y, i.e. kron(x, y^T).
[[nodiscard]] SuperOperator sandwich_superop(const Operator& x, const Operator& y);

/// Unitary channel rho -> u rho u^dagger, i.e. kron(u, conj(u)).
[[nodiscard]] SuperOperator unitary_superop(const Operator& u);

/// Commutator generator a (x) I - I (x) a^T, the superoperator of [a, .].
[[nodiscard]] Eigen::MatrixXcd commutator_superop(const Operator& a);

/// Choi matrix J = sum_ij |i><j| (x) Phi(|i><j|).
[[nodiscard]] Eigen::MatrixXcd choi_matrix(const SuperOperator& phi);

/// Largest singular value.
[[nodiscard]] double spectral_norm(const Eigen::MatrixXcd& m);

/// max |m_ij|
[[nodiscard]] double max_abs(const Eigen::MatrixXcd& m);

/// Vectorized identity as a row functional: <<I|X>> = Tr X.
[[nodiscard]] Eigen::RowVectorXcd identity_functional(Index dim);

}  // namespace qspec
