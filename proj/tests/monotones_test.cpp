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
#include "qmarkov/monotones.hpp"
#include "qmarkov/suites.hpp"

namespace qmarkov {
namespace {

OptimizerConfig quick(int restarts = 8) {
  OptimizerConfig cfg;
  cfg.restarts = restarts;
  cfg.seed = 3;
  return cfg;
}

MultipartiteState ghz() { return make("psi1").state; }

TEST(IM, Examples) {
  EXPECT_NEAR(i_m(make("phi2").state), 2.0, 1e-10);
  EXPECT_NEAR(i_m(make("psi1_star").state), 1.0, 1e-10);
  EXPECT_NEAR(i_m(make("psi1_flag").state), 0.0, 1e-10);
}

TEST(IDown, Examples) {
  EXPECT_NEAR(i_down(make("phi2").state, quick()).value, 1.0, 1e-3);
  EXPECT_NEAR(i_down(make("phi1").state, quick()).value, 2.0, 1e-3);
  EXPECT_LT(i_down(make("phi3").state, quick()).value, 1e-2);
}

TEST(IDown, DephasingKeepsPhiTwo) {
  // Dephasing leaves the classical E of Phi_II alone, so it cannot be optimal.
  EXPECT_NEAR(i_down_at(make("phi2").state, dephasing(2)), 2.0, 1e-10);
  EXPECT_NEAR(i_down_at(make("phi2").state, replacement(basis_projector(2, 0), 2)), 1.0, 1e-10);
}

TEST(IDownStar, Examples) {
  EXPECT_NEAR(i_down_star(ghz(), quick()).value, 1.0, 1e-3);
  EXPECT_NEAR(i_down_star(make("phi2").state, quick()).value, 1.0, 1e-3);
  EXPECT_NEAR(i_down_star(make("phi1").state, quick()).value, 2.0, 1e-3);
}

TEST(ISq, Examples) {
  EXPECT_NEAR(i_sq(make("phi1").state, quick()).value, 2.0, 1e-3);
  EXPECT_LT(i_sq(make("phi2").state, quick()).value, 1e-6);
  EXPECT_LT(i_sq(make("rho_bar", 0.3).state, quick()).value, 1e-6);
}

TEST(JDown, Examples) {
  EXPECT_NEAR(j_down(make("phi2").state, quick()).value, 2.0, 1e-3);
  EXPECT_LT(j_down(ghz(), quick()).value, 1e-3);
  EXPECT_NEAR(j_down(make("phi1").state, quick()).value, 2.0, 1e-3);
}

TEST(JDownStar, Examples) {
  EXPECT_NEAR(j_down_star(ghz(), quick()).value, 2.0, 1e-3);
  EXPECT_LT(j_down_star(make("psi2").state, quick()).value, 1e-2);
  EXPECT_LT(j_down_star(make("psi1_star").state, quick()).value, 1e-3);
}

TEST(Witness, ReevaluationMatchesValue) {
  const Monotone all[] = {Monotone::kIDown, Monotone::kIDownStar, Monotone::kISq,
                          Monotone::kJDown, Monotone::kJDownStar, Monotone::kDRec};
  for (const char* name : {"phi2", "psi1", "rho_bar"}) {
    const MultipartiteState s = make(name).state;
    for (Monotone m : all) {
      const MonotoneEstimate e = estimate(m, s, quick(4));
      EXPECT_NEAR(reevaluate(m, s, e), e.value, 1e-9) << name << " " << monotone_name(m);
    }
  }
}

TEST(Witness, StateReproducesValue) {
  const MultipartiteState s = make("phi2").state;
  const MonotoneEstimate e = j_down(s, quick(4));
  ASSERT_TRUE(e.witness_state.has_value());
  EXPECT_NEAR(oracle::cqmi(*e.witness_state, e.witness_parts.a, e.witness_parts.b,
                           e.witness_parts.e),
              e.value, 1e-9);
}

TEST(Ordering, TableRowsObeyChain) {
  // The closed-form rows are exact, so the chain holds with a tight slack.
  for (const auto& name : table1_names()) {
    const MonotoneRow r = witness_row(name);
    EXPECT_LE(r[3], r[2] + 1e-9) << name;  // I_sq <= I_down_star
    EXPECT_LE(r[1], r[0] + 1e-9) << name;  // I_down <= I_M
    EXPECT_GE(r[4], r[1] - 1e-9) << name;  // J_down >= I_down
    EXPECT_GE(r[5], r[2] - 1e-9) << name;  // J_down_star >= I_down_star
  }
}

TEST(Ordering, ExpectedRowsObeyChainAsData) {
  for (const auto& name : table1_names()) {
    const MonotoneRow r = *make(name).expected;
    EXPECT_LE(r[3], r[2]) << name;
    EXPECT_LE(r[1], r[0]) << name;
    EXPECT_GE(r[4], r[1]) << name;
    EXPECT_GE(r[5], r[2]) << name;
  }
}

TEST(Ordering, OptimizerOnOtherCatalogStates) {
  for (const char* name : {"psi1_prime", "psi1_flag", "rho_bar"}) {
    const MultipartiteState s = make(name).state;
    const double im = i_m(s);
    const double id = i_down(s, quick()).value;
    const double ids = i_down_star(s, quick()).value;
    const double isq = i_sq(s, quick()).value;
    EXPECT_LE(isq, ids + 1e-2) << name;
    EXPECT_LE(id, im + 1e-9) << name;
    EXPECT_GE(j_down(s, quick()).value, id - 1e-2) << name;
    EXPECT_GE(j_down_star(s, quick()).value, ids - 1e-2) << name;
  }
}

TEST(EP, Examples) {
  Rng rng(12);
  const PureState tau = purify(random_state({{"A", 2}}, rng), "B");
  const MultipartiteState pure_ab = tau.density();
  const double sa = oracle::entropy(partial_trace(pure_ab, {"A"}).matrix());
  EXPECT_NEAR(e_p(pure_ab, quick()).value, sa, 1e-6);

  ComplexMatrix flags = ComplexMatrix::Zero(4, 4);
  flags(0, 0) = flags(3, 3) = 0.5;
  EXPECT_NEAR(e_p(MultipartiteState({{"A", 2}, {"B", 2}}, flags), quick()).value, 1.0, 1e-3);

  const MultipartiteState product =
      tensor(random_state({{"A", 2}}, rng), random_state({{"B", 2}}, rng));
  EXPECT_LT(e_p(product, quick()).value, 1e-3);
}

TEST(EP, ClassicalFlagsAgainstRandomSweep) {
  // Brute force: random splitting isometries of a fixed purification never go
  // below the optimizer's value by more than the tolerance.
  ComplexMatrix flags = ComplexMatrix::Zero(4, 4);
  flags(0, 0) = flags(3, 3) = 0.5;
  const MultipartiteState ab({{"A", 2}, {"B", 2}}, flags);
  const PureState phi = purify(ab, "F");
  const int df = phi.dims().back().dim;
  Rng rng(31);
  double best = 10.0;
  for (int t = 0; t < 400; ++t) {
    const ComplexMatrix w = random_isometry_matrix(df, 4, rng);
    const PureState split = apply_isometry(phi, {"F"}, w, {{"FA", 2}, {"FB", 2}});
    best = std::min(best, e_p_at(ab, split, "FA"));
  }
  EXPECT_GE(best, 1.0 - 1e-9);
  EXPECT_NEAR(e_p(ab, quick()).value, 1.0, 1e-3);
}

TEST(EP, PureTripartiteDuality) {
  for (const char* name : {"psi1", "phi1"}) {
    const MultipartiteState s = make(name).state;
    const double ep = e_p(partial_trace(s, {"A", "B"}), quick()).value;
    EXPECT_NEAR(2.0 * ep, j_down_star(s, quick()).value, 1e-6) << name;
  }
}

TEST(DRec, ZeroOnMarkovWithPetzWitness) {
  const MultipartiteState s = make("psi1_flag").state;
  const MonotoneEstimate e = d_rec(s, quick());
  EXPECT_LT(e.value, 1e-8);
  EXPECT_EQ(e.restart, 0);
}

TEST(DRec, PhiOneFloor) {
  const MultipartiteState s = make("phi1").state;
  const double v = d_rec(s, quick()).value;
  EXPECT_GE(v, 1.0);
  // Restart-sweep oracle: random recoveries never beat the regression value.
  Rng rng(41);
  double best = kInfinity;
  for (int t = 0; t < 200; ++t) {
    best = std::min(best, d_rec_at(s, random_channel(2, 4, 1 + t % 4, rng)));
  }
  EXPECT_GE(best, 2.0 - 1e-9);
  EXPECT_NEAR(v, 2.0, 1e-3);
}

TEST(DRec, PhiTwoIsFinitePositive) {
  const double v = d_rec(make("phi2").state, quick()).value;
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_NEAR(v, 2.0, 1e-3);
}

TEST(DRec, OneWayArrowsDoNotIncrease) {
  // Only arrows whose protocols use local steps and broadcasts from Alice.
  for (const char* name : {"phi1 -> phi2", "phi2 -> psi1_star", "phi2 -> phi3"}) {
    bool found = false;
    for (const auto& a : fig3_arrows()) {
      if (a.name != name) continue;
      found = true;
      for (const auto& step : a.protocol.steps) {
        const std::string cls = step_class(step);
        EXPECT_TRUE(cls == "local_a" || cls == "local_b" || cls == "broadcast_a" ||
                    cls == "reversible_e")
            << name << " uses " << cls;
      }
      const Tripartition parts = {{"A"}, {"B"}, [&] {
                                    Labels e;
                                    for (const auto& l : a.to.labels())
                                      if (l != "A" && l != "B") e.push_back(l);
                                    return e;
                                  }()};
      const double before = d_rec(a.from, quick()).value;
      const double after = estimate(Monotone::kDRec, a.to, quick(), parts).value;
      EXPECT_LE(after, before + 1e-3) << name << " " << before << " -> " << after;
    }
    EXPECT_TRUE(found) << name;
  }
}

TEST(Canonical, GroupsPartsIntoABE) {
  Rng rng(2);
  const MultipartiteState s = random_state({{"X", 2}, {"E1", 2}, {"Y", 2}, {"X2", 2}}, rng);
  const Tripartition parts{{"X", "X2"}, {"Y"}, {"E1"}};
  const MultipartiteState c = canonical(s, parts);
  EXPECT_EQ(c.dim_of("A"), 4);
  EXPECT_NEAR(cqmi(c, abe()), oracle::cqmi(s, {"X", "X2"}, {"Y"}, {"E1"}), 1e-9);
  EXPECT_NEAR(i_m(s, parts), oracle::cqmi(s, {"X", "X2"}, {"Y"}, {"E1"}), 1e-9);
}

TEST(Config, RejectsBadValues) {
  OptimizerConfig cfg;
  cfg.restarts = 0;
  EXPECT_THROW(i_down(make("phi2").state, cfg), InputError);
  OptimizerConfig cap;
  cap.extension_dim_cap = 0;
  EXPECT_THROW(i_down_star(make("phi2").state, cap), InputError);
}

TEST(Config, SameSeedSameAnswer) {
  const MultipartiteState s = make("psi2").state;
  const MonotoneEstimate a = i_down(s, quick(4));
  const MonotoneEstimate b = i_down(s, quick(4));
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.evaluations, b.evaluations);
}

}  // namespace
}  // namespace qmarkov
