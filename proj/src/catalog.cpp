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

#include "qmarkov/catalog.hpp"

#include <cmath>
#include <map>

namespace qmarkov {

namespace {

MultipartiteState from_vector(const Dims& dims, const ComplexVector& v) {
  return MultipartiteState(dims, v * v.adjoint());
}

ComplexVector ket(int d, int i) { return basis_ket(d, i); }

const Dims kQubits3 = {{"A", 2}, {"B", 2}, {"E", 2}};

}  // namespace

ComplexMatrix pauli_power(int k, int l) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  if (k) m = m * pauli_x();
  if (l) m = m * pauli_z();
  return m;
}

ComplexVector bell_vector(int p, int q) {
  if ((p != 0 && p != 1) || (q != 0 && q != 1)) throw InputError("Bell indices must be 0 or 1");
  ComplexVector phi = (kron(ket(2, 0), ket(2, 0)) + kron(ket(2, 1), ket(2, 1))) / std::sqrt(2.0);
  return kron(pauli_power(p, q), ComplexMatrix::Identity(2, 2)) * phi;
}

PureState bell(int p, int q, const std::string& a, const std::string& b) {
  return PureState({{a, 2}, {b, 2}}, bell_vector(p, q));
}

ComplexMatrix bell_basis() {
  ComplexMatrix m(4, 4);
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) m.col(2 * p + q) = bell_vector(p, q);
  }
  return m;
}

std::vector<std::string> catalog_names() {
  return {"phi1",      "phi2", "phi3",      "psi1",       "psi1_star", "psi1_prime",
          "psi1_flag", "psi2", "psi2_star", "double_phi", "phi1_d",    "rho_bar"};
}

std::vector<std::string> table1_names() {
  return {"phi1", "phi2", "phi3", "psi1_star", "psi1", "psi2_star", "psi2"};
}

NamedState make(const std::string& name, std::optional<double> param) {
  static const std::map<std::string, MonotoneRow> table = {
      {"phi1", {2, 2, 2, 2, 2, 2}},      {"phi2", {2, 1, 1, 0, 2, 2}},
      {"phi3", {2, 0, 0, 0, 0, 0}},      {"psi1_star", {1, 1, 0, 0, 2, 0}},
      {"psi1", {1, 0, 1, 0, 0, 2}},      {"psi2_star", {1, 0, 0, 0, 0, 0}},
      {"psi2", {1, 0, 0, 0, 0, 0}},
  };
  const bool parametric = name == "phi1_d" || name == "rho_bar";
  if (param && !parametric) throw InputError("state '" + name + "' takes no parameter");

  auto finish = [&](MultipartiteState s) {
    NamedState ns{name, std::move(s), std::nullopt};
    if (auto it = table.find(name); it != table.end()) ns.expected = it->second;
    return ns;
  };

  if (name == "phi1") {
    return finish(from_vector(kQubits3, kron(bell_vector(0, 0), ket(2, 0))));
  }
  if (name == "phi2") {
    ComplexMatrix m = ComplexMatrix::Zero(8, 8);
    for (int e = 0; e < 2; ++e) {
      const ComplexVector v = kron(bell_vector(0, e), ket(2, e));
      m += 0.5 * v * v.adjoint();
    }
    return finish(MultipartiteState(kQubits3, m));
  }
  if (name == "phi3") {
    ComplexMatrix m = ComplexMatrix::Zero(16, 16);
    for (int p = 0; p < 2; ++p) {
      for (int q = 0; q < 2; ++q) {
        const ComplexVector v = kron(bell_vector(p, q), ket(4, 2 * p + q));
        m += 0.25 * v * v.adjoint();
      }
    }
    return finish(MultipartiteState({{"A", 2}, {"B", 2}, {"E", 4}}, m));
  }
  if (name == "psi1") {
    const ComplexVector ghz = (ket(8, 0) + ket(8, 7)) / std::sqrt(2.0);
    return finish(from_vector(kQubits3, ghz));
  }
  if (name == "psi1_prime") {
    const ComplexVector ghz = (ket(8, 0) + ket(8, 7)) / std::sqrt(2.0);
    const ComplexMatrix h = kron(ComplexMatrix::Identity(4, 4), hadamard());
    return finish(from_vector(kQubits3, h * ghz));
  }
  if (name == "psi1_star" || name == "psi1_flag") {
    ComplexMatrix m = ComplexMatrix::Zero(8, 8);
    const int e1 = name == "psi1_star" ? 0 : 1;  // E records the coin or stays |0>
    m(0, 0) = 0.5;
    m(6 + e1, 6 + e1) = 0.5;
    return finish(MultipartiteState(kQubits3, m));
  }
  if (name == "psi2_star") {
    ComplexMatrix m = ComplexMatrix::Zero(8, 8);
    for (int l = 0; l < 2; ++l) {
      for (int n = 0; n < 2; ++n) {
        const int idx = (l * 2 + n) * 2 + (l ^ n);
        m(idx, idx) = 0.25;
      }
    }
    return finish(MultipartiteState(kQubits3, m));
  }
  if (name == "psi2") {
    ComplexMatrix m = ComplexMatrix::Zero(16, 16);
    for (int p = 0; p < 2; ++p) {
      ComplexVector v = ComplexVector::Zero(16);
      for (int q = 0; q < 2; ++q) v += kron(bell_vector(p, q), ket(4, 2 * p + q));
      m += 0.25 * v * v.adjoint();
    }
    return finish(MultipartiteState({{"A", 2}, {"B", 2}, {"E", 4}}, m));
  }
  if (name == "double_phi") {
    // |Phi_00>^{A EA} |Phi_00>^{B EB}, stored in the order A, B, EA, EB.
    const PureState raw({{"A", 2}, {"EA", 2}, {"B", 2}, {"EB", 2}},
                        kron(bell_vector(0, 0), bell_vector(0, 0)));
    return finish(permute_systems(raw.density(), {"A", "B", "EA", "EB"}));
  }
  if (name == "phi1_d") {
    const double dv = param.value_or(2.0);
    const int d = static_cast<int>(std::lround(dv));
    if (d < 2 || std::abs(dv - d) > 1e-12 || d * d * 2 > kMaxTotalDim) {
      throw InputError("phi1_d needs an integer d with 2 <= d and 2 d^2 <= 256");
    }
    ComplexVector phi = ComplexVector::Zero(d * d);
    for (int i = 0; i < d; ++i) phi(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
    return finish(from_vector({{"A", d}, {"B", d}, {"E", 2}}, kron(phi, ket(2, 0))));
  }
  if (name == "rho_bar") {
    const double lam = param.value_or(0.5);
    if (!(lam >= 0.0 && lam <= 1.0)) throw InputError("rho_bar needs lambda in [0, 1]");
    ComplexMatrix m = ComplexMatrix::Zero(8, 8);
    m(0, 0) = lam;
    m(6, 6) = 1.0 - lam;
    return finish(MultipartiteState(kQubits3, m));
  }
  throw InputError("unknown catalog state '" + name + "'");
}

// ---------------------------------------------------------------------------

PauliReport pauli_identity_suite() {
  PauliReport rep;
  auto add = [&](std::string id, std::vector<int> idx, double residual) {
    rep.checks.push_back({std::move(id), std::move(idx), residual, residual <= 1e-12});
    ++rep.total;
    if (rep.checks.back().ok) ++rep.passed;
  };
  auto sign = [](int bit) { return bit ? -1.0 : 1.0; };
  const ComplexMatrix eye2 = ComplexMatrix::Identity(2, 2);

  // Commutation sign rule.
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) {
          const ComplexMatrix lhs = pauli_power(k, l) * pauli_power(p, q);
          const ComplexMatrix rhs =
              sign((l * p) ^ (k * q)) * pauli_power(p, q) * pauli_power(k, l);
          add("commutation", {k, l, p, q}, (lhs - rhs).cwiseAbs().maxCoeff());
        }

  // Bell-state transport.
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l)
      for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n)
          for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q) {
              const ComplexVector lhs =
                  kron(pauli_power(k, l), pauli_power(m, n)) * bell_vector(p, q);
              const int s = (l * p) ^ (k * q) ^ (m * (l ^ n));
              const ComplexVector rhs =
                  sign(s) * kron(pauli_power(p, q), eye2) * bell_vector(k ^ m, l ^ n);
              add("bell_transport", {k, l, m, n, p, q}, (lhs - rhs).cwiseAbs().maxCoeff());
            }

  // Equal Paulis on both halves only flip the sign.
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) {
          const ComplexVector lhs =
              kron(pauli_power(k, l), pauli_power(k, l)) * bell_vector(p, q);
          const ComplexVector rhs = sign((l * p) ^ (k * q)) * bell_vector(p, q);
          add("bell_sign", {k, l, p, q}, (lhs - rhs).cwiseAbs().maxCoeff());
        }

  // Doubled Bell pairs in the AB | E1E2 Schmidt basis. Vectors are ordered
  // A, B, E1, E2.
  auto doubled = [&](int k, int l) {
    const PureState raw({{"A", 2}, {"E1", 2}, {"B", 2}, {"E2", 2}},
                        kron(bell_vector(k, l), bell_vector(k, l)));
    return permute_systems(raw, {"A", "B", "E1", "E2"}).amplitudes();
  };
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      ComplexVector rhs = ComplexVector::Zero(16);
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
          rhs += 0.5 * sign((l * p) ^ (k * q)) * kron(bell_vector(p, q), bell_vector(p, q));
      add("bell_flip_expansion", {k, l}, (doubled(k, l) - rhs).cwiseAbs().maxCoeff());
    }

  // Triple-Pauli identity, checked coefficient by coefficient.
  const ComplexVector base = doubled(0, 0);
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l)
      for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) {
          const ComplexMatrix op = kron(kron(pauli_power(k, l), pauli_power(m, n)),
                                        kron(pauli_power(k ^ m, l ^ n), eye2));
          const ComplexVector lhs = op * base;
          ComplexVector rhs = ComplexVector::Zero(16);
          for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q)
              rhs += 0.5 * sign((n * p) ^ (m * q) ^ (n * (k ^ m))) *
                     kron(bell_vector(p, q), bell_vector(p, q));
          const double full = (lhs - rhs).cwiseAbs().maxCoeff();
          for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q) {
              const ComplexVector basis = kron(bell_vector(p, q), bell_vector(p, q));
              const Complex coeff = basis.dot(lhs);
              const double expected = 0.5 * sign((n * p) ^ (m * q) ^ (n * (k ^ m)));
              add("triple_pauli", {k, l, m, n, p, q},
                  std::max(std::abs(coeff - expected), full));
            }
        }
  return rep;
}

}  // namespace qmarkov
