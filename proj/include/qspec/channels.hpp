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

// Measurement channel of one Ramsey interferometry measurement (RIM), the
// free-evolution channel and their concatenation.

#include <array>
#include <numbers>
#include <vector>

#include <Eigen/SparseCore>

#include "qspec/bath_model.hpp"
#include "qspec/free_evolver.hpp"
#include "qspec/operator.hpp"

namespace qspec {

struct RimConfig {
  double tau1 = 0.0;
  double delta_phi = std::numbers::pi / 2.0;
  double weak_threshold = 0.3;
};

/// tau1 * ||A||_eff <= threshold, using bath.a_norm_eff when set.
[[nodiscard]] bool weak_condition(const BathModel& bath, const RimConfig& cfg);

struct KrausChannel {
  std::vector<Operator> kraus_ops;
  Index dim = 0;
};

/// M_a = [U0 - (-1)^a e^{i dphi} U1] / 2 with U0 = e^{-i(A+B)tau1},
/// U1 = e^{-i(-A+B)tau1}.
[[nodiscard]] KrausChannel build_rim_channel(const BathModel& bath, const RimConfig& cfg);
[[nodiscard]] KrausChannel build_rim_channel(const Operator& a, const Operator& b,
                                             const RimConfig& cfg);

/// max |sum_a M_a^dagger M_a - I|
[[nodiscard]] double completeness_error(const KrausChannel& ch);

/// M (x) M^*
[[nodiscard]] SuperOperator kraus_superop(const Operator& m);

/// U_B (x) U_B^* with U_B = e^{-i B tau2}.
[[nodiscard]] SuperOperator build_free_evolution_channel(const BathModel& bath, double tau2);

/// max |<<I| S - <<I||, zero for trace-preserving maps.
[[nodiscard]] double trace_preservation_error(const SuperOperator& s);

struct ConcatenatedChannel {
  SuperOperator superop;                              // sum_a F_a M_a
  std::array<SuperOperator, 2> measurement_superops;  // M_a (x) M_a^*
  SuperOperator p_hat;                                // sum_a (-1)^a F_a M_a
  double tau = 0.0;
};

[[nodiscard]] ConcatenatedChannel concatenate(const KrausChannel& rim, const SuperOperator& free,
                                              double tau);
/// Outcome-conditioned free evolution: branch a follows measurement outcome a.
[[nodiscard]] ConcatenatedChannel concatenate(const KrausChannel& rim, const FreeEvolver& free,
                                              double tau);

struct SpectralDecomposition {
  Eigen::VectorXcd eigenvalues;
  Eigen::MatrixXcd right;  // columns R_k, unit norm
  Eigen::MatrixXcd left;   // rows L_k with L_j R_k = delta_jk
  double condition_estimate = 0.0;
};

inline constexpr double kMaxEigenvectorCondition = 1e8;

/// Throws NonDiagonalizable when the eigenvector matrix is ill-conditioned.
[[nodiscard]] SpectralDecomposition spectral_decompose(const SuperOperator& s);
[[nodiscard]] SpectralDecomposition spectral_decompose(const ConcatenatedChannel& ch);

/// Eigenbasis of B, eigenvalues ascending.
struct BathEigenbasis {
  RealVector energies;
  Operator vectors;
};
[[nodiscard]] BathEigenbasis bath_eigenbasis(const Operator& b);

/// Vectorized |v_i><v_j|.
[[nodiscard]] Eigen::VectorXcd pair_vector(const BathEigenbasis& eb, Index i, Index j);

/// Generator L = -1/2 Ahat^2 with Ahat = A (x) I - I (x) A^T.
[[nodiscard]] Eigen::MatrixXcd measurement_generator(const Operator& a);

/// <<ij| L |ij>> in the eigenbasis of B, as a d x d real table.
[[nodiscard]] Eigen::MatrixXd generator_diagonal(const Operator& a, const BathEigenbasis& eb);

struct PerturbativeChannel {
  SuperOperator superop;        // U'_B (I + tau1^2 L)
  Eigen::MatrixXcd generator;   // L
  bool weak_condition_met = true;
};

/// U'_B (I + tau1^2 L) with U'_B the free evolution over the full period tau.
[[nodiscard]] PerturbativeChannel perturbative_channel(const BathModel& bath, const RimConfig& cfg,
                                                       double tau);

struct PairMatch {
  Index i = 0;
  Index j = 0;
  Index k = 0;  // eigenvalue index in the decomposition
  double overlap = 0.0;
};

/// Assigns each eigenvector to the pair |ij>> it overlaps most, greedily by
/// descending overlap, one-to-one.
[[nodiscard]] std::vector<PairMatch> match_pairs(const SpectralDecomposition& dec,
                                                 const BathEigenbasis& eb);

/// Hilbert-space form of one measurement-plus-free-evolution cycle. Keeps the
/// Kraus operators sparse when they are mostly zero, which is the case for
/// weakly displaced bosonic modes.
class RimCycle {
 public:
  RimCycle(const KrausChannel& rim, FreeEvolver free, double tau, double prune_tol = 1e-14);

  [[nodiscard]] Index dim() const noexcept { return dim_; }
  [[nodiscard]] double tau() const noexcept { return tau_; }
  [[nodiscard]] const FreeEvolver& free() const noexcept { return free_; }
  [[nodiscard]] const Operator& kraus(int a) const { return dense_[a & 1]; }
  [[nodiscard]] const Operator& effect(int a) const { return effect_[a & 1]; }
  /// M0^dagger M0 - M1^dagger M1, so that <<I|P|x>> = Tr(O x).
  [[nodiscard]] const Operator& observable() const noexcept { return observable_; }
  [[nodiscard]] bool sparse() const noexcept { return sparse_; }

  /// M_a x M_a^dagger into `out`; `work` is scratch.
  void measure(const Operator& x, int a, Operator& out, Operator& work) const;

  /// sum_a s_a F_a(M_a x M_a^dagger) with s_a = 1 (cycle) or (-1)^a (signed).
  [[nodiscard]] Operator cycle(const Operator& x) const;
  [[nodiscard]] Operator signed_cycle(const Operator& x) const;

 private:
  [[nodiscard]] Operator combine(const Operator& x, bool signed_sum) const;

  Index dim_ = 0;
  double tau_ = 0.0;
  FreeEvolver free_;
  std::array<Operator, 2> dense_;
  std::array<Eigen::SparseMatrix<Complex, Eigen::RowMajor>, 2> sparse_ops_;
  std::array<Eigen::SparseMatrix<Complex, Eigen::RowMajor>, 2> sparse_adj_;
  std::array<Operator, 2> effect_;
  Operator observable_;
  bool sparse_ = false;
};

}  // namespace qspec
