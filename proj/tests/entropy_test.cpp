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

#include "oracles.hpp"
#include "qmarkov/catalog.hpp"
#include "qmarkov/channel.hpp"
#include "qmarkov/entropy.hpp"

namespace qmarkov {
namespace {

double h(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

TEST(VonNeumann, Examples) {
  EXPECT_NEAR(von_neumann(bell(0, 1).density()), 0.0, 1e-10);
  EXPECT_NEAR(von_neumann(maximally_mixed(2)), 1.0, 1e-12);
  const MultipartiteState a = partial_trace(make("rho_bar", 0.25).state, {"A"});
  EXPECT_NEAR(von_neumann(a), h(0.25), 1e-12);
  EXPECT_NEAR(von_neumann(a), 0.8112781245, 1e-9);
}

TEST(Cqmi, TableValues) {
  EXPECT_NEAR(cqmi(make("phi1").state, "A", "B", "E"), 2.0, 1e-10);
  EXPECT_NEAR(cqmi(make("psi2").state, "A", "B", "E"), 1.0, 1e-10);
}

TEST(Cqmi, ProductIsZero) {
  Rng rng(4);
  const MultipartiteState s = tensor(tensor(random_state({{"A", 2}}, rng), random_state({{"B", 3}}, rng)),
                                     random_state({{"E", 2}}, rng));
  EXPECT_NEAR(cqmi(s, abe()), 0.0, 1e-10);
}

TEST(Cqmi, MatchesOracleOnRandomStates) {
  Rng rng(21);
  for (int t = 0; t < 10; ++t) {
    const MultipartiteState s =
        random_state({{"A", 2}, {"E", 2}, {"B", 3}, {"A1", 2}}, rng, 1 + t % 4);
    const Tripartition parts{{"A", "A1"}, {"B"}, {"E"}};
    EXPECT_NEAR(cqmi(s, parts), oracle::cqmi(s, {"A", "A1"}, {"B"}, {"E"}), 1e-9);
  }
}

TEST(Cqmi, PureStateOverload) {
  const PureState ghz({{"A", 2}, {"B", 2}, {"E", 2}},
                      (kron(kron(basis_ket(2, 0), basis_ket(2, 0)), basis_ket(2, 0)) +
                       kron(kron(basis_ket(2, 1), basis_ket(2, 1)), basis_ket(2, 1))) /
                          std::sqrt(2.0));
  EXPECT_NEAR(cqmi(ghz, abe()), 1.0, 1e-10);
  EXPECT_NEAR(cqmi(ghz.density(), abe()), 1.0, 1e-10);
}

TEST(RelativeEntropy, Examples) {
  const MultipartiteState zero({{"A", 2}}, basis_projector(2, 0));
  const MultipartiteState one({{"A", 2}}, basis_projector(2, 1));
  const MultipartiteState mixed({{"A", 2}}, maximally_mixed(2));
  EXPECT_NEAR(relative_entropy(mixed, mixed), 0.0, 1e-12);
  EXPECT_NEAR(relative_entropy(zero, mixed), 1.0, 1e-12);
  EXPECT_TRUE(std::isinf(relative_entropy(zero, one)));
}

TEST(RelativeEntropy, CommutingCaseMatchesClassicalSum) {
  const std::vector<double> p = {0.1, 0.2, 0.3, 0.4};
  const std::vector<double> q = {0.25, 0.25, 0.4, 0.1};
  ComplexMatrix a = ComplexMatrix::Zero(4, 4), b = ComplexMatrix::Zero(4, 4);
  double expected = 0.0;
  for (int i = 0; i < 4; ++i) {
    a(i, i) = p[i];
    b(i, i) = q[i];
    expected += p[i] * std::log2(p[i] / q[i]);
  }
  EXPECT_NEAR(relative_entropy(a, b), expected, 1e-12);
}

TEST(MutualInfo, Examples) {
  EXPECT_NEAR(mutual_info(bell(0, 0).density(), "A", "B"), 2.0, 1e-10);
  Rng rng(8);
  EXPECT_NEAR(mutual_info(tensor(random_state({{"A", 2}}, rng), random_state({{"B", 2}}, rng)),
                          "A", "B"),
              0.0, 1e-10);
  EXPECT_NEAR(mutual_info(make("psi1").state, "A", "B"), 1.0, 1e-10);
}

TEST(BinaryEntropy, Values) {
  EXPECT_NEAR(binary_entropy(0.5), 1.0, 1e-15);
  EXPECT_NEAR(binary_entropy(0.0), 0.0, 1e-15);
  EXPECT_NEAR(binary_entropy(0.11), h(0.11), 1e-14);
}

}  // namespace
}  // namespace qmarkov
