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
#include "qmarkov/freeops.hpp"
#include "qmarkov/markov.hpp"

namespace qmarkov {
namespace {

ComplexVector ket(int d, int i) { return basis_ket(d, i); }

TEST(Run, EmptyProtocolIsIdentity) {
  const MultipartiteState s = make("phi3").state;
  EXPECT_EQ(run(Protocol{}, s).matrix(), s.matrix());
}

TEST(Run, CoinFlipTurnsPhiOneIntoPhiTwoUpToEve) {
  // P1 leaves the coin with Eve; merging it into E gives Phi_II on (A, B, Ec).
  const MultipartiteState out = run(protocol_p1(), make("phi1").state);
  const MultipartiteState ab_c = partial_trace(out, {"A", "B", "Ec"});
  const MultipartiteState phi2 = relabel(make("phi2").state, {{"E", "Ec"}});
  EXPECT_LT(trace_norm_distance(permute_systems(ab_c, {"A", "B", "Ec"}), phi2), 1e-10);
}

TEST(Run, CqmiNeverIncreasesOnRandomSteps) {
  Rng rng(77);
  const Dims dims = {{"A", 2}, {"A1", 2}, {"B", 2}, {"E", 2}};
  for (int t = 0; t < 20; ++t) {
    const SharedState s = share(random_state(dims, rng));
    for (int cls = 0; cls < 7; ++cls) {
      const ProtocolStep step = random_free_step(cls, s, rng);
      const SharedState out = run_step(step, s);
      const double before = oracle::cqmi(s.state, owned_by(s, Party::kA), owned_by(s, Party::kB),
                                         owned_by(s, Party::kE));
      const Labels a = owned_by(out, Party::kA);
      const Labels b = owned_by(out, Party::kB);
      const double after =
          a.empty() || b.empty() ? 0.0 : oracle::cqmi(out.state, a, b, owned_by(out, Party::kE));
      EXPECT_LE(after, before + 1e-9) << step_class(step);
    }
  }
}

TEST(Run, StepClassNames) {
  EXPECT_EQ(step_class(LocalA{identity_channel(2), {"A"}, {{"A", 2}}}), "local_a");
  EXPECT_EQ(step_class(QuantumCommBE{{"B"}}), "comm_be");
  EXPECT_EQ(step_class(ReversibleE{identity_pair(2), {"E"}, {{"E", 2}}}), "reversible_e");
}

TEST(Run, OwnershipIsEnforced) {
  const SharedState s = share(make("phi1").state);
  EXPECT_THROW(run_step(LocalA{identity_channel(2), {"B"}, {{"B", 2}}}, s), LabelError);
  EXPECT_THROW(run_step(QuantumCommAE{{"B"}}, s), LabelError);
  EXPECT_THROW(run_step(ReversibleE{identity_pair(2), {"A"}, {{"A", 2}}}, s), LabelError);
  EXPECT_THROW(share(MultipartiteState({{"X", 2}}, basis_projector(2, 0))), LabelError);
}

TEST(Run, IrreversibleEveStepIsRejected) {
  const SharedState s = share(make("phi2").state);
  EXPECT_THROW(run_step(ReversibleE{{dephasing(2), identity_channel(2)}, {"E"}, {{"E", 2}}}, s),
               ContractError);
}

TEST(Run, CommunicationMovesOwnership) {
  const SharedState s = share(make("phi1").state);
  const SharedState out = run_step(QuantumCommAE{{"A"}}, s);
  EXPECT_EQ(out.owner.at("A"), Party::kE);
  EXPECT_EQ(cqmi(out), 0.0);
}

TEST(Convertibility, TrivialCases) {
  const MultipartiteState s = make("psi2").state;
  const ReversibleE id{identity_pair(4), {"E"}, {{"E", 4}}};
  const ConvertibilityVerdict same = check_convertibility(s, s, Protocol{}, id, 0.0);
  EXPECT_TRUE(same.ok);
  EXPECT_EQ(same.epsilon_achieved, 0.0);

  const MultipartiteState other =
      MultipartiteState({{"A", 2}, {"B", 2}, {"E", 2}},
                        kron(bell(1, 1).density().matrix(), basis_projector(2, 0)));
  const ReversibleE id2{identity_pair(2), {"E"}, {{"E", 2}}};
  const ConvertibilityVerdict far = check_convertibility(make("phi1").state, other, Protocol{}, id2, 1e-8);
  EXPECT_FALSE(far.ok);
  EXPECT_NEAR(far.epsilon_achieved, 2.0, 1e-10);
}

TEST(Convertibility, DephaseAToReachPsiOneStar) {
  for (const auto& a : fig3_arrows()) {
    if (a.name != "phi2 -> psi1_star") continue;
    const ConvertibilityVerdict v = check_convertibility(a.from, a.to, a.protocol, a.witness, 1e-9);
    EXPECT_TRUE(v.ok);
    EXPECT_TRUE(v.witness_report.ok);
    return;
  }
  FAIL() << "arrow missing";
}

TEST(Convertibility, EveryArrowHolds) {
  const auto arrows = fig3_arrows();
  EXPECT_EQ(arrows.size(), 13u);
  for (const auto& a : arrows) {
    const ConvertibilityVerdict v = check_convertibility(a.from, a.to, a.protocol, a.witness, 1e-8);
    EXPECT_TRUE(v.ok) << a.name << " " << v.epsilon_achieved;
  }
}

TEST(Protocols, P2GivesPsiTwoOnSplitE) {
  const MultipartiteState out = run(protocol_p2(), p2_input());
  const MultipartiteState ordered =
      permute_systems(partial_trace(out, {"A", "B", "EA", "EB"}), {"A", "B", "EA", "EB"});
  const ComplexMatrix target = make("psi2").state.matrix();
  EXPECT_LT(oracle::trace_distance(ordered.matrix(), target), 1e-10);
}

TEST(Protocols, P3GivesPhiThreeOnSplitE) {
  const MultipartiteState out = run(protocol_p3(), psi2_star_squared());
  const MultipartiteState ab_e = permute_systems(partial_trace(out, {"A", "B", "EA", "EB"}),
                                                 {"A", "B", "EA", "EB"});
  EXPECT_LT(oracle::trace_distance(ab_e.matrix(), make("phi3").state.matrix()), 1e-10);
}

TEST(Protocols, TwirlGivesTwoCopiesOfPsiTwoStar) {
  const MultipartiteState out = run(protocol_pauli_twirl(), make("phi3").state);
  // Each copy on its own already has the right marginal.
  const MultipartiteState copy = permute_systems(partial_trace(out, {"Ap", "Bp", "Ep"}), {"Ap", "Bp", "Ep"});
  EXPECT_LT(oracle::trace_distance(copy.matrix(), make("psi2_star").state.matrix()), 1e-10);
}

TEST(Generation, MaxNonMarkovianTargets) {
  for (const char* name : {"phi1", "psi1", "phi3"}) {
    const Generation g = generate_from_max_nonmarkovian(make(name).state, 2);
    EXPECT_LT(g.residual, 1e-9) << name;
  }
}

TEST(Generation, MarkovFromProductTerm) {
  Rng rng(4);
  MarkovDecomposition d;
  d.weights = {1.0};
  d.left = {random_state({{"A", 2}, {"EL", 1}}, rng)};
  d.right = {random_state({{"B", 2}, {"ER", 1}}, rng)};
  const Generation g = generate_markov(d);
  EXPECT_LT(g.residual, 1e-10);
  EXPECT_TRUE(is_markov(g.final_state).is_markov);
}

TEST(Generation, MarkovWithEntangledSides) {
  MarkovDecomposition d;
  d.weights = {0.25, 0.75};
  for (int j = 0; j < 2; ++j) {
    const ComplexVector v = bell_vector(j, 0);
    d.left.push_back(MultipartiteState({{"A", 2}, {"EL", 2}}, v * v.adjoint()));
    d.right.push_back(MultipartiteState({{"B", 2}, {"ER", 2}}, v * v.adjoint()));
  }
  const Generation g = generate_markov(d);
  EXPECT_LT(g.residual, 1e-10);
  const MarkovVerdict v = is_markov(g.final_state);
  EXPECT_TRUE(v.is_markov);
  EXPECT_LT(v.petz_residual, 1e-8);
}

TEST(Generation, RejectsBadWeights) {
  MarkovDecomposition d;
  d.weights = {0.5};
  d.left = {MultipartiteState({{"A", 2}, {"EL", 1}}, basis_projector(2, 0))};
  d.right = {MultipartiteState({{"B", 2}, {"ER", 1}}, basis_projector(2, 0))};
  EXPECT_THROW(generate_markov(d), std::invalid_argument);
}

TEST(Dilution, UnitDilutesItself) {
  const PureState phi({{"A", 2}, {"B", 2}, {"E", 2}}, kron(bell_vector(0, 0), ket(2, 0)));
  const Isometry id(ComplexMatrix::Identity(2, 2));
  const DilutionResult r = dilution_step(phi, id, id);
  EXPECT_TRUE(r.verdict.ok);
  EXPECT_LE(r.verdict.epsilon_achieved, 1e-9);
}

TEST(Dilution, GhzFromOneEbit) {
  ComplexMatrix cnot_copy = ComplexMatrix::Zero(4, 2);
  cnot_copy(0, 0) = cnot_copy(3, 1) = 1.0;
  const PureState ghz({{"A", 2}, {"B", 2}, {"E", 2}},
                      (kron(kron(ket(2, 0), ket(2, 0)), ket(2, 0)) +
                       kron(kron(ket(2, 1), ket(2, 1)), ket(2, 1))) /
                          std::sqrt(2.0));
  const DilutionResult r = dilution_step(ghz, Isometry(cnot_copy), Isometry(ComplexMatrix::Identity(2, 2)), 32);
  EXPECT_TRUE(r.verdict.ok);
  EXPECT_LE(r.verdict.epsilon_achieved, 1e-8);
  ASSERT_TRUE(r.search_fidelity.has_value());
  EXPECT_NEAR(*r.search_fidelity, 1.0, 1e-6);
}

TEST(Dilution, ProductTargetNeedsNoEntanglement) {
  // Both halves of the ebit go to Eve; A and B are reset locally.
  ComplexMatrix hand_over = ComplexMatrix::Zero(4, 2);
  hand_over(0, 0) = hand_over(1, 1) = 1.0;  // |a> -> |0>_A |a>_A0
  const PureState product({{"A", 2}, {"B", 2}, {"E", 2}}, kron(kron(ket(2, 0), ket(2, 0)), ket(2, 0)));
  const DilutionResult r = dilution_step(product, Isometry(hand_over), Isometry(hand_over));
  EXPECT_TRUE(r.verdict.ok);
  EXPECT_LE(r.verdict.epsilon_achieved, 1e-9);
}

}  // namespace
}  // namespace qmarkov
