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

// Seeded randomized checks of the structural invariants each module promises.

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "qmarkov/catalog.hpp"
#include "qmarkov/classical.hpp"
#include "qmarkov/entropy.hpp"
#include "qmarkov/freeops.hpp"
#include "qmarkov/markov.hpp"
#include "qmarkov/suites.hpp"

namespace qmarkov {
namespace {

bool hermitian(const ComplexMatrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-12; }

TEST(TensorProperties, PartialTraceOfProduct) {
  Rng rng(101);
  for (int t = 0; t < 100; ++t) {
    const MultipartiteState rho = random_state({{"A", 2 + t % 3}}, rng);
    const MultipartiteState sigma = random_state({{"B", 1 + t % 4}}, rng);
    const MultipartiteState back = partial_trace(tensor(rho, sigma), {"A"});
    EXPECT_LT((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(TensorProperties, PermuteAndTraceKeepTraceAndHermiticity) {
  Rng rng(102);
  for (int t = 0; t < 50; ++t) {
    const MultipartiteState s = random_state({{"A", 2}, {"B", 3}, {"C", 2}}, rng, 1 + t % 4);
    for (const auto& m : {permute_systems(s, {"C", "A", "B"}).matrix(),
                          partial_trace(s, {"C", "A"}).matrix(), partial_trace(s, {"B"}).matrix()}) {
      EXPECT_NEAR(m.trace().real(), 1.0, 1e-12);
      EXPECT_TRUE(hermitian(m));
    }
  }
}

TEST(TensorProperties, PurifyThenTrace) {
  Rng rng(103);
  for (int t = 0; t < 30; ++t) {
    const MultipartiteState s = random_state({{"A", 2}, {"B", 1 + t % 3}}, rng, 1 + t % 6);
    const PureState p = purify(s, "F");
    const MultipartiteState back = partial_trace(p.density(), {"A", "B"});
    EXPECT_LT((back.matrix() - s.matrix()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(TensorProperties, EigenReconstruction) {
  Rng rng(104);
  for (int d : {1, 2, 5, 16, 33, 64}) {
    const ComplexMatrix g = gaussian_matrix(d, d, rng);
    const ComplexMatrix h = g + g.adjoint();
    const EigenDecomposition e = hermitian_eig(h);
    const ComplexMatrix r = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    EXPECT_LT((r - h).cwiseAbs().maxCoeff(), 1e-10) << d;
  }
}

TEST(EntropyProperties, StrongSubadditivity) {
  Rng rng(105);
  for (int t = 0; t < 200; ++t) {
    const MultipartiteState s =
        random_state({{"A", 2}, {"B", 2 + t % 2}, {"E", 1 + t % 3}}, rng, 1 + t % 5);
    EXPECT_GE(cqmi(s, abe()), -1e-9);
  }
}

TEST(EntropyProperties, ChainRule) {
  Rng rng(106);
  for (int t = 0; t < 30; ++t) {
    const MultipartiteState s = random_state({{"Q", 2}, {"A", 2}, {"B", 2}, {"E", 2}}, rng);
    const double whole = cqmi(s, {{"Q", "A"}, {"B"}, {"E"}});
    const double parts = cqmi(s, {{"Q"}, {"B"}, {"E"}}) + cqmi(s, {{"A"}, {"B"}, {"E", "Q"}});
    EXPECT_NEAR(whole, parts, 1e-9);
  }
}

TEST(EntropyProperties, DualityOnPureStates) {
  Rng rng(107);
  for (int t = 0; t < 30; ++t) {
    const MultipartiteState s = random_state({{"A", 2}, {"B", 2}, {"E", 2}, {"F", 2 + t % 3}}, rng, 1);
    EXPECT_NEAR(cqmi(s, {{"A"}, {"B"}, {"E"}}), cqmi(s, {{"A"}, {"B"}, {"F"}}), 1e-9);
  }
}

TEST(EntropyProperties, DataProcessingOnA) {
  Rng rng(108);
  for (int t = 0; t < 100; ++t) {
    const MultipartiteState s = random_state({{"A", 2}, {"B", 2}, {"E", 2}}, rng);
    const int out = 1 + t % 3;
    const Channel c = random_channel(2, out, 2 + t % 3, rng);
    const MultipartiteState after = apply(c, s, "A");
    EXPECT_LE(cqmi(after, abe()), cqmi(s, abe()) + 1e-9);
  }
}

TEST(MarkovProperties, PetzAndCqmiAgree) {
  std::vector<MultipartiteState> corpus;
  for (const auto& name : catalog_names()) corpus.push_back(make(name).state);
  for (double lam : {0.0, 0.3, 1.0}) corpus.push_back(make("rho_bar", lam).state);
  Rng rng(109);
  for (int t = 0; t < 5; ++t) {
    MarkovDecomposition d;
    d.weights = {0.4, 0.6};
    for (int j = 0; j < 2; ++j) {
      d.left.push_back(random_state({{"A", 2}, {"EL", 2}}, rng));
      d.right.push_back(random_state({{"B", 2}, {"ER", 2}}, rng));
    }
    corpus.push_back(generate_markov(d).final_state);
  }
  for (const auto& s : corpus) {
    const Tripartition t = {{"A"}, {"B"}, [&] {
                              Labels e;
                              for (const auto& l : s.labels())
                                if (l != "A" && l != "B") e.push_back(l);
                              return e;
                            }()};
    const MarkovVerdict v = is_markov(s, t);
    const bool petz_zero = v.petz_residual <= 1e-8;
    const bool cqmi_zero = cqmi(s, t) <= 1e-8;
    EXPECT_EQ(petz_zero, cqmi_zero) << v.petz_residual << " " << cqmi(s, t);
  }
}

TEST(MarkovProperties, SeparableExtensionsAreMarkov) {
  Rng rng(110);
  for (int t = 0; t < 10; ++t) {
    std::vector<SeparableTerm> terms;
    ComplexMatrix ab = ComplexMatrix::Zero(4, 4);
    const double w[3] = {0.2, 0.3, 0.5};
    for (double wj : w) {
      const ComplexMatrix a = random_state({{"A", 2}}, rng).matrix();
      const ComplexMatrix b = random_state({{"B", 2}}, rng).matrix();
      terms.push_back({wj, a, b});
      ab += wj * kron(a, b);
    }
    const MultipartiteState ext =
        markov_extension_from_separable(MultipartiteState({{"A", 2}, {"B", 2}}, ab), terms, "E");
    EXPECT_LE(cqmi(ext, abe()), 1e-10);
    EXPECT_LE(is_markov(ext).petz_residual, 1e-8);
  }
}

TEST(FreeOpsProperties, MarkovChainsStayMarkov) {
  Rng rng(111);
  int checked = 0;
  for (int t = 0; t < 10; ++t) {
    MarkovDecomposition d;
    d.weights = {0.5, 0.5};
    for (int j = 0; j < 2; ++j) {
      d.left.push_back(random_state({{"A", 2}, {"EL", 1 + t % 2}}, rng));
      d.right.push_back(random_state({{"B", 2}, {"ER", 1}}, rng));
    }
    SharedState s = share(generate_markov(d).final_state);
    for (int k = 0; k < 3; ++k) {
      const int cls = static_cast<int>((t + 3 * k) % 7);
      const SharedState next = run_step(random_free_step(cls, s, rng), s);
      const Labels a = owned_by(next, Party::kA);
      const Labels b = owned_by(next, Party::kB);
      if (a.empty() || b.empty()) break;
      if (next.state.dim() > 64) break;
      s = next;
      EXPECT_TRUE(is_markov(s.state, {a, b, owned_by(s, Party::kE)}).is_markov)
          << "trial " << t << " step " << k << " class " << cls;
      ++checked;
    }
  }
  EXPECT_GE(checked, 15);
}

TEST(FreeOpsProperties, BroadcastRegistersAgree) {
  Rng rng(112);
  const MultipartiteState s = random_state({{"A", 3}, {"B", 2}, {"E", 2}}, rng);
  const Protocol p = Protocol{}.then(BroadcastA{basis_instrument(ComplexMatrix::Identity(3, 3), true),
                                                {"A"}, {{"A", 3}}, "Bc", "Ec", {}, {}, {}});
  const MultipartiteState out = run(p, s);
  const MultipartiteState regs = permute_systems(partial_trace(out, {"A", "Bc", "Ec"}), {"A", "Bc", "Ec"});
  // Only |mmm> entries may carry weight, and the state is diagonal there.
  const ComplexMatrix& m = regs.matrix();
  for (int i = 0; i < 27; ++i)
    for (int j = 0; j < 27; ++j) {
      const bool same = i == j && (i == 0 || i == 13 || i == 26);
      if (!same) {
        EXPECT_LT(std::abs(m(i, j)), 1e-12) << i << "," << j;
      }
    }
  const MultipartiteState a = partial_trace(s, {"A"});
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(m(13 * k, 13 * k).real(), a.matrix()(k, k).real(), 1e-12);
}

TEST(MonotoneProperties, ReferenceArrowsNeverIncreaseAnyColumn) {
  const std::vector<std::string> table = table1_names();
  auto known = [&](const std::string& n) { return std::find(table.begin(), table.end(), n) != table.end(); };
  int compared = 0;
  for (const auto& arrow : fig3_arrows()) {
    std::istringstream in(arrow.name);
    std::string from, to, sep;
    in >> from >> sep >> to;
    if (!known(from) || !known(to)) continue;
    const MonotoneRow before = witness_row(from);
    const MonotoneRow after = witness_row(to);
    for (int k = 0; k < 6; ++k) EXPECT_LE(after[k], before[k] + 2e-3) << arrow.name << " column " << k;
    ++compared;
  }
  EXPECT_GE(compared, 8);
}

StochasticMap random_map(int in, int out, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> r(in * out);
  for (int i = 0; i < in; ++i) {
    double s = 0.0;
    for (int o = 0; o < out; ++o) s += (r[o * in + i] = e(rng));
    for (int o = 0; o < out; ++o) r[o * in + i] /= s;
  }
  return StochasticMap(in, out, r);
}

ClassicalDist random_dist(int nx, int ny, int nz, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(nx * ny * nz);
  double s = 0.0;
  for (auto& v : p) s += (v = e(rng));
  for (auto& v : p) v /= s;
  return ClassicalDist(nx, ny, nz, p);
}

TEST(ClassicalProperties, LocalProcessingAndReversibleZ) {
  std::mt19937_64 rng(113);
  for (int t = 0; t < 100; ++t) {
    const ClassicalDist p = random_dist(2, 2, 3, rng);
    const double before = classical_cmi(p);
    EXPECT_LE(classical_cmi(apply_x(random_map(2, 1 + t % 3, rng), p)), before + 1e-9);
    EXPECT_LE(classical_cmi(apply_y(random_map(2, 1 + t % 3, rng), p)), before + 1e-9);
    const StochasticMap cycle(3, 3, {0, 0, 1, 1, 0, 0, 0, 1, 0});
    const StochasticMap back(3, 3, {0, 1, 0, 0, 0, 1, 1, 0, 0});
    ASSERT_TRUE(is_reversible(cycle, back));
    EXPECT_NEAR(classical_cmi(apply_z(cycle, p)), before, 1e-12);
  }
}

TEST(ClassicalProperties, IntrinsicBelowCmi) {
  std::mt19937_64 rng(114);
  ClassicalConfig cfg;
  cfg.restarts = 4;
  for (int t = 0; t < 10; ++t) {
    const ClassicalDist p = random_dist(2, 2, 2 + t % 2, rng);
    EXPECT_LE(classical_intrinsic(p, cfg).value, classical_cmi(p) + 1e-9);
  }
}

}  // namespace
}  // namespace qmarkov
