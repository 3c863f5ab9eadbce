// Copyright 2026 The qmarkov Authors
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

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "qmarkov/tensor.hpp"

namespace qmarkov {

/// Shared tolerance for channel equality, measured in normalized Choi trace
/// distance.
inline constexpr double kChannelTol = 1e-9;

using Rng = std::mt19937_64;

/**
 * A CPTP map in operator-sum form. A channel with in_dim 1 prepares a state;
 * one with out_dim 1 discards its input.
 */
class Channel {
 public:
  /// Throws ShapeError on ragged Kraus shapes, InvariantError when
  /// sum K^dag K differs from the identity by more than 1e-10.
  explicit Channel(std::vector<ComplexMatrix> kraus);

  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  int in_dim() const { return static_cast<int>(kraus_.front().cols()); }
  int out_dim() const { return static_cast<int>(kraus_.front().rows()); }

  /// Action on a bare operator of size in_dim.
  ComplexMatrix operator()(const ComplexMatrix& x) const;

 private:
  std::vector<ComplexMatrix> kraus_;
};

/// A linear isometry W with W^dag W = I (out_dim >= in_dim).
class Isometry {
 public:
  explicit Isometry(ComplexMatrix matrix);

  const ComplexMatrix& matrix() const { return matrix_; }
  int in_dim() const { return static_cast<int>(matrix_.cols()); }
  int out_dim() const { return static_cast<int>(matrix_.rows()); }
  Channel channel() const;

 private:
  ComplexMatrix matrix_;
};

/// A channel on Eve's side together with a claimed left inverse.
struct ReversiblePair {
  Channel forward;
  Channel inverse;
};

/*******************************************************************************
 * APPLICATION
 ******************************************************************************/

/// Applies `c` to the factor `target`; the factor keeps its label and takes
/// dimension c.out_dim().
MultipartiteState apply(const Channel& c, const MultipartiteState& s,
                        const std::string& target);

/**
 * General form: the joint factor `inputs` (in the listed order) is replaced
 * by `outputs` at the position of the first input. Empty `inputs` appends
 * the prepared outputs; empty `outputs` discards the inputs.
 */
MultipartiteState apply(const Channel& c, const MultipartiteState& s,
                        const Labels& inputs, const Dims& outputs);

/// second o first.
Channel compose(const Channel& second, const Channel& first);
Channel tensor(const Channel& a, const Channel& b);

/*******************************************************************************
 * REPRESENTATIONS
 ******************************************************************************/

/// Unnormalized Choi matrix J = sum_ij |i><j| (x) C(|i><j|), trace in_dim.
ComplexMatrix choi(const Channel& c);

/// Trace norm of the Choi difference divided by in_dim; channel equality
/// means choi_distance <= kChannelTol.
double choi_distance(const Channel& a, const Channel& b);

struct Dilation {
  Isometry v;  ///< in -> out (x) env, env is the trailing factor
  std::string env_label;
  int env_dim = 1;
};

/// V = sum_k K_k (x) |k>_env.
Dilation stinespring(const Channel& c, const std::string& env_label = "env");

/// Channel obtained from an isometry in -> out (x) env by discarding env.
Channel trace_environment(const ComplexMatrix& v, int out_dim);

/// Equivalent Kraus list of minimal length, read off the Choi spectrum.
Channel minimal_kraus(const Channel& c);

struct ReversibilityReport {
  bool ok = false;
  double choi_residual = 0.0;   ///< distance of inverse o forward from id
  double max_tau_residual = 0.0;
  std::optional<MultipartiteState> sigma0;  ///< fixed environment state
};

/**
 * Tests whether inverse o forward is the identity. When it is, the Stinespring
 * isometry W of the inverse is used to extract the fixed state sigma0 and
 * W forward(tau) W^dag = tau (x) sigma0 is checked on 20 random tau.
 */
ReversibilityReport verify_reversible(const ReversiblePair& pair,
                                      std::uint64_t seed = 7);

/*******************************************************************************
 * SAMPLING
 ******************************************************************************/

/// Haar isometry from QR of a complex Gaussian matrix with phase fixing.
Isometry random_isometry(int in_dim, int out_dim, std::uint64_t seed);
ComplexMatrix random_isometry_matrix(int in_dim, int out_dim, Rng& rng);
ComplexMatrix random_unitary(int d, Rng& rng);
ComplexMatrix gaussian_matrix(int rows, int cols, Rng& rng);
/// Random density matrix of given rank (induced measure).
MultipartiteState random_state(const Dims& dims, Rng& rng, int rank = 0);
/// Random channel with `kraus_count` Kraus operators.
Channel random_channel(int in_dim, int out_dim, int kraus_count, Rng& rng);

/*******************************************************************************
 * NAMED CHANNELS
 ******************************************************************************/

Channel identity_channel(int d);
Channel unitary_channel(const ComplexMatrix& u);
/// Dephasing in the computational basis.
Channel dephasing(int d);
/// Dephasing in the orthonormal basis given by the columns of `basis`.
Channel dephasing_in_basis(const ComplexMatrix& basis);
/// Replaces any input by maximally mixed output (fully depolarizing).
Channel depolarizing(int d);
/// Replaces any input of dimension in_dim by `sigma`.
Channel replacement(const ComplexMatrix& sigma, int in_dim);
/// Prepares `sigma` from nothing (in_dim 1).
Channel preparation(const ComplexMatrix& sigma);
/// Discards a d-dimensional input (out_dim 1).
Channel discard(int d);
/// rho -> rho (x) sigma.
Channel append_state(int d, const ComplexMatrix& sigma);

ComplexMatrix pauli_x();
ComplexMatrix pauli_z();
ComplexMatrix pauli_y();
ComplexMatrix hadamard();
/// Generalized shift X|j> = |j+1 mod d> and clock Z|j> = w^j |j>.
ComplexMatrix shift(int d);
ComplexMatrix clock(int d);
/// Sum_j |j><j| (x) u^j on control (x) target.
ComplexMatrix controlled(int control_dim, const ComplexMatrix& u);

}  // namespace qmarkov
