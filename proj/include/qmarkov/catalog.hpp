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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qmarkov/channel.hpp"

namespace qmarkov {

/**
 * Named example states. Factor order is A, B, E followed by any ancillas in
 * creation order; every constructor emits labeled dims.
 *
 * Names: phi1, phi2, phi3, psi1, psi1_star, psi1_prime, psi1_flag, psi2,
 * psi2_star, double_phi, phi1_d (parameter d), rho_bar (parameter lambda).
 */

/// Column order of the reference rows: I_M, I_down, I_down_star, I_sq, J_down, J_down_star.
using MonotoneRow = std::array<double, 6>;

struct NamedState {
  std::string name;
  MultipartiteState state;
  std::optional<MonotoneRow> expected;
};

/// (sigma_x^p sigma_z^q (x) I)(|00> + |11>)/sqrt 2 on labels `a`, `b`.
PureState bell(int p, int q, const std::string& a = "A", const std::string& b = "B");
ComplexVector bell_vector(int p, int q);
/// Columns are |Phi_00>, |Phi_01>, |Phi_10>, |Phi_11> (index 2p + q).
ComplexMatrix bell_basis();
/// sigma_x^k sigma_z^l.
ComplexMatrix pauli_power(int k, int l);

/// Throws InputError for unknown names or bad parameters.
NamedState make(const std::string& name, std::optional<double> param = std::nullopt);
std::vector<std::string> catalog_names();
/// The seven states with reference rows, in row order.
std::vector<std::string> table1_names();

struct IdentityCheck {
  std::string identity;
  std::vector<int> indices;
  double residual = 0.0;
  bool ok = false;
};

struct PauliReport {
  std::vector<IdentityCheck> checks;
  int passed = 0;
  int total = 0;
};

/// Verifies the Pauli-algebra identities used by the Bell-state protocols as
/// matrix equalities within 1e-12 over every index tuple.
PauliReport pauli_identity_suite();

}  // namespace qmarkov
