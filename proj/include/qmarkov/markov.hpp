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

#include <vector>

#include "qmarkov/channel.hpp"
#include "qmarkov/entropy.hpp"

namespace qmarkov {

inline constexpr double kMarkovTol = 1e-8;

struct MarkovVerdict {
  double cqmi_value = 0.0;
  double petz_residual = 0.0;  ///< trace distance between s and its Petz recovery
  bool is_markov = false;
};

/**
 * Petz map E -> BE built from the marginals of `s`:
 * X -> rho_BE^{1/2} (1 (x) rho_E^{-1/2} X rho_E^{-1/2}) rho_BE^{1/2}.
 *
 * The output factors are the b group followed by the e group. Inputs outside
 * supp(rho_E) are sent to the fixed state rho_BE so the map is trace
 * preserving everywhere.
 */
Channel petz_recovery(const MultipartiteState& s, const Tripartition& t = abe());

/// Applies a recovery channel E -> BE to the AE marginal and restores the
/// factor order of `s`.
MultipartiteState recover(const MultipartiteState& s, const Channel& r,
                          const Tripartition& t = abe());

MarkovVerdict is_markov(const MultipartiteState& s, const Tripartition& t = abe(),
                        double tol = kMarkovTol);

struct SeparableTerm {
  double weight = 0.0;
  ComplexMatrix a;  ///< state on the A side
  ComplexMatrix b;  ///< state on the B side
};

/**
 * Flagged extension sum_j p_j sigma_j (x) tau_j (x) |j><j|_E of a separable
 * `rho_ab` (two factors, A side first). Throws ConsistencyError when the
 * decomposition does not reproduce rho_ab within 1e-10.
 */
MultipartiteState markov_extension_from_separable(const MultipartiteState& rho_ab,
                                                  const std::vector<SeparableTerm>& terms,
                                                  const std::string& e_label = "E");

struct DephasedPurification {
  /// sum_j sqrt(p_j) |phi_sigma_j>|phi_tau_j>|j>, with the two local purifiers
  /// and the flag j merged into one E factor of dimension n * dA * dB.
  PureState purification;
  /// Dephasing of the flag part of E.
  Channel t;
};

DephasedPurification dephase_purifier_to_markov(const MultipartiteState& rho_ab,
                                                const std::vector<SeparableTerm>& terms,
                                                const std::string& e_label = "E");

}  // namespace qmarkov
