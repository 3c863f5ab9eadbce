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

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qmarkov/catalog.hpp"
#include "qmarkov/entropy.hpp"
#include "qmarkov/markov.hpp"
#include "qmarkov/suites.hpp"

namespace qmarkov {
namespace {

TEST(Bell, PauliActsOnTheFirstQubit) {
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(bell_vector(0, 0)(0) - r), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(bell_vector(0, 0)(3) - r), 0.0, 1e-15);
  // X swaps |00> + |11> into |10> + |01>; Z puts a minus on |11>.
  EXPECT_NEAR(std::abs(bell_vector(1, 0)(1)), r, 1e-15);
  EXPECT_NEAR(std::abs(bell_vector(1, 0)(2)), r, 1e-15);
  EXPECT_NEAR(bell_vector(0, 1)(3).real(), -r, 1e-15);
  EXPECT_THROW(bell_vector(2, 0), InputError);
}

TEST(Bell, BasisIsUnitary) {
  const ComplexMatrix b = bell_basis();
  EXPECT_LT((b.adjoint() * b - ComplexMatrix::Identity(4, 4)).norm(), 1e-14);
}

TEST(Catalog, EveryStateIsValid) {
  for (const auto& name : catalog_names()) {
    const MultipartiteState s = make(name).state;
    EXPECT_NEAR(s.matrix().trace().real(), 1.0, 1e-12) << name;
    EXPECT_LT((s.matrix() - s.matrix().adjoint()).norm(), 1e-14) << name;
    EXPECT_GE(oracle::entropy(s.matrix()), -1e-12) << name;
  }
}

TEST(Catalog, CqmiMatchesTheTable) {
  for (const auto& name : table1_names()) {
    const NamedState s = make(name);
    ASSERT_TRUE(s.expected.has_value()) << name;
    const double want = (*s.expected)[0];
    EXPECT_NEAR(oracle::cqmi(s.state, {"A"}, {"B"}, {"E"}), want, 1e-10) << name;
  }
}

TEST(Catalog, ExpectedRows) {
  const MonotoneRow phi2 = *make("phi2").expected;
  EXPECT_EQ(phi2, (MonotoneRow{2, 1, 1, 0, 2, 2}));
  const MonotoneRow psi1_star = *make("psi1_star").expected;
  EXPECT_EQ(psi1_star, (MonotoneRow{1, 1, 0, 0, 2, 0}));
  const MonotoneRow psi1 = *make("psi1").expected;
  EXPECT_EQ(psi1, (MonotoneRow{1, 0, 1, 0, 0, 2}));
  EXPECT_FALSE(make("rho_bar", 0.3).expected.has_value());
}

TEST(Catalog, WitnessRowsReproduceTheTable) {
  for (const auto& name : table1_names()) {
    const MonotoneRow got = witness_row(name);
    const MonotoneRow want = *make(name).expected;
    for (int k = 0; k < 6; ++k) EXPECT_NEAR(got[k], want[k], 1e-6) << name << " column " << k;
  }
}

TEST(Catalog, RhoBar) {
  for (double lam : {0.0, 1.0}) EXPECT_TRUE(is_markov(make("rho_bar", lam).state).is_markov);
  EXPECT_NEAR(cqmi(make("rho_bar", 0.5).state, abe()), 1.0, 1e-12);
  const double lam = 0.2;
  const double h = -lam * std::log2(lam) - (1 - lam) * std::log2(1 - lam);
  EXPECT_NEAR(cqmi(make("rho_bar", lam).state, abe()), h, 1e-12);
  EXPECT_THROW(make("rho_bar", 1.5), InputError);
}

TEST(Catalog, ParametricPhiOne) {
  const MultipartiteState s = make("phi1_d", 3.0).state;
  EXPECT_EQ(s.dim_of("A"), 3);
  EXPECT_NEAR(cqmi(s, abe()), 2.0 * std::log2(3.0), 1e-10);
  EXPECT_THROW(make("phi1_d", 2.5), InputError);
  EXPECT_THROW(make("phi1_d", 20.0), InputError);
}

TEST(Catalog, FlagAndPrime) {
  EXPECT_TRUE(is_markov(make("psi1_flag").state).is_markov);
  EXPECT_NEAR(cqmi(make("psi1_prime").state, abe()), 1.0, 1e-10);
  EXPECT_NEAR(cqmi(make("double_phi").state, {{"A"}, {"B"}, {"EA", "EB"}}), 0.0, 1e-10);
}

TEST(Catalog, UnknownNames) {
  EXPECT_THROW(make("nope"), InputError);
  EXPECT_THROW(make("phi1", 0.5), InputError);
}

TEST(Pauli, EveryIdentityHolds) {
  const PauliReport r = pauli_identity_suite();
  EXPECT_EQ(r.passed, r.total);
  EXPECT_GT(r.total, 0);
  for (const auto& c : r.checks) EXPECT_LT(c.residual, 1e-12) << c.identity;
}

TEST(Pauli, PowersComposeUpToPhase) {
  // sigma_{k,l} sigma_{m,n} = +- sigma_{k+m, l+n}
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l)
      for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) {
          const ComplexMatrix prod = pauli_power(k, l) * pauli_power(m, n);
          const ComplexMatrix want = pauli_power((k + m) % 2, (l + n) % 2);
          const Complex overlap = (want.adjoint() * prod).trace() / 2.0;
          EXPECT_NEAR(std::abs(overlap), 1.0, 1e-14);
        }
}

}  // namespace
}  // namespace qmarkov
