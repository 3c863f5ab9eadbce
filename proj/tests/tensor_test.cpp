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
#include "qmarkov/tensor.hpp"

namespace qmarkov {
namespace {

ComplexMatrix diag(std::initializer_list<double> v) {
  ComplexMatrix m = ComplexMatrix::Zero(v.size(), v.size());
  int i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return m;
}

TEST(Kron, IdentityAndProjectors) {
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  EXPECT_TRUE(kron(id2, id2)
                  .isApprox(ComplexMatrix::Identity(4, 4)));
  EXPECT_TRUE(kron(basis_projector(2, 0), basis_projector(2, 1)).isApprox(diag({0, 1, 0, 0})));
}

TEST(Kron, PauliXZByHand) {
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 2) = 1.0;
  expected(1, 3) = -1.0;
  expected(2, 0) = 1.0;
  expected(3, 1) = -1.0;
  EXPECT_TRUE(kron(pauli_x(), pauli_z()).isApprox(expected));
}

TEST(State, RejectsBadInput) {
  EXPECT_THROW(MultipartiteState({{"A", 2}}, diag({0.5, 0.6})), InvariantError);
  EXPECT_THROW(MultipartiteState({{"A", 2}}, diag({1.5, -0.5})), InvariantError);
  EXPECT_THROW(MultipartiteState({{"A", 2}, {"A", 2}}, diag({1, 0, 0, 0})), LabelError);
  EXPECT_THROW(MultipartiteState({{"A", 3}}, diag({1, 0})), ShapeError);
  ComplexMatrix big = ComplexMatrix::Identity(512, 512) / 512.0;
  EXPECT_THROW(MultipartiteState({{"A", 2}, {"B", 256}}, big), ShapeError);
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
  const MultipartiteState bell00 = bell(0, 0).density();
  EXPECT_TRUE(partial_trace(bell00, {"A"}).matrix().isApprox(maximally_mixed(2)));
}

TEST(PartialTrace, PhiOneDropsE) {
  const MultipartiteState s = make("phi1").state;
  EXPECT_TRUE(partial_trace(s, {"A", "B"}).matrix().isApprox(bell(0, 0).density().matrix()));
}

TEST(PartialTrace, ProductFactor) {
  Rng rng(3);
  const MultipartiteState rho = random_state({{"A", 2}}, rng);
  const MultipartiteState sigma = random_state({{"B", 3}}, rng);
  EXPECT_TRUE(partial_trace(tensor(rho, sigma), {"B"}).matrix().isApprox(sigma.matrix(), 1e-12));
}

TEST(PartialTrace, MatchesLoopOracle) {
  Rng rng(11);
  const MultipartiteState s = random_state({{"A", 2}, {"B", 3}, {"C", 2}, {"D", 2}}, rng);
  const std::vector<int> dims = {2, 3, 2, 2};
  const std::vector<std::pair<Labels, std::vector<bool>>> cases = {
      {{"A"}, {true, false, false, false}},
      {{"B", "D"}, {false, true, false, true}},
      {{"A", "C", "D"}, {true, false, true, true}}};
  for (const auto& [keep, m] : cases) {
    const ComplexMatrix expected = oracle::partial_trace(s.matrix(), dims, m);
    EXPECT_LT((partial_trace(s, keep).matrix() - expected).norm(), 1e-12);
  }
}

TEST(Permute, SwapAndIdentity) {
  const MultipartiteState s({{"A", 2}, {"B", 2}}, kron(basis_projector(2, 0), basis_projector(2, 1)));
  const MultipartiteState swapped = permute_systems(s, {"B", "A"});
  EXPECT_TRUE(swapped.matrix().isApprox(kron(basis_projector(2, 1), basis_projector(2, 0))));
  EXPECT_EQ(swapped.dims()[0].label, "B");
  EXPECT_TRUE(permute_systems(s, {"A", "B"}).matrix().isApprox(s.matrix()));
}

TEST(Permute, SwapOfPurifierAndEveFixesPhiTwoPurification) {
  ComplexVector v = ComplexVector::Zero(16);
  for (int e = 0; e < 2; ++e) {
    v += kron(kron(bell_vector(0, e), basis_ket(2, e)), basis_ket(2, e)) / std::sqrt(2.0);
  }
  const PureState phi({{"A", 2}, {"B", 2}, {"E", 2}, {"F", 2}}, v);
  const PureState swapped =
      relabel(permute_systems(phi, {"A", "B", "F", "E"}), {{"F", "E"}, {"E", "F"}});
  EXPECT_LT((swapped.amplitudes() - v).norm(), 1e-12);
}

TEST(Eig, KnownSpectra) {
  EXPECT_TRUE(hermitian_eig(pauli_z()).values.isApprox(RealVector::Map(std::vector<double>{-1, 1}.data(), 2)));
  const RealVector mixed = hermitian_eig(maximally_mixed(2)).values;
  EXPECT_NEAR(mixed(0), 0.5, 1e-14);
  EXPECT_NEAR(mixed(1), 0.5, 1e-14);
  const MultipartiteState ab = partial_trace(make("rho_bar", 0.25).state, {"A", "B"});
  const RealVector v = hermitian_eig(ab.matrix()).values;
  EXPECT_NEAR(v(0), 0.0, 1e-14);
  EXPECT_NEAR(v(1), 0.0, 1e-14);
  EXPECT_NEAR(v(2), 0.25, 1e-14);
  EXPECT_NEAR(v(3), 0.75, 1e-14);
}

TEST(TraceDistance, Examples) {
  const MultipartiteState zero({{"A", 2}}, basis_projector(2, 0));
  const MultipartiteState one({{"A", 2}}, basis_projector(2, 1));
  const MultipartiteState mixed({{"A", 2}}, maximally_mixed(2));
  EXPECT_NEAR(trace_norm_distance(zero, zero), 0.0, 1e-14);
  EXPECT_NEAR(trace_norm_distance(zero, one), 2.0, 1e-12);
  EXPECT_NEAR(trace_norm_distance(mixed, zero), 1.0, 1e-12);
}

TEST(Purify, MarginalsAreRecovered) {
  const MultipartiteState mixed({{"A", 2}}, maximally_mixed(2));
  const PureState p = purify(mixed, "F");
  EXPECT_EQ(p.dims().back().dim, 2);
  EXPECT_NEAR(oracle::entropy(
                  oracle::partial_trace(p.density().matrix(), {2, 2}, {true, false})),
              1.0, 1e-12);

  const MultipartiteState phi2 = make("phi2").state;
  const PureState q = purify(phi2, "F");
  EXPECT_EQ(q.dims().back().dim, 2);
  EXPECT_LT((partial_trace(q.density(), {"A", "B", "E"}).matrix() - phi2.matrix()).norm(), 1e-12);

  const PureState r = purify(bell(0, 0).density(), "F");
  EXPECT_EQ(r.dims().back().dim, 1);
}

TEST(RandomState, SeededAndValid) {
  Rng a(5), b(5);
  const MultipartiteState x = random_state({{"A", 2}, {"B", 2}}, a);
  const MultipartiteState y = random_state({{"A", 2}, {"B", 2}}, b);
  EXPECT_EQ(x.matrix(), y.matrix());
  EXPECT_NEAR(x.matrix().trace().real(), 1.0, 1e-12);
}

}  // namespace
}  // namespace qmarkov
