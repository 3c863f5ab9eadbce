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

#include "qmarkov/suites.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qmarkov/channel.hpp"
#include "qmarkov/entropy.hpp"
#include "qmarkov/freeops.hpp"
#include "qmarkov/markov.hpp"

namespace qmarkov {

bool SuiteReport::passed() const { return failures() == 0; }

int SuiteReport::failures() const {
  return static_cast<int>(
      std::count_if(checks.begin(), checks.end(), [](const SuiteCheck& c) { return !c.passed; }));
}

void SuiteReport::add(std::string name, double measured, double expected, double tolerance,
                      std::string detail) {
  const bool ok = std::isfinite(measured) && std::abs(measured - expected) <= tolerance;
  checks.push_back({std::move(name), ok, measured, expected, tolerance, std::move(detail)});
}

void SuiteReport::add_flag(std::string name, bool ok, double measured, std::string detail) {
  checks.push_back({std::move(name), ok, measured, 0.0, 0.0, std::move(detail)});
}

namespace {

ComplexVector ket(int d, int i) { return basis_ket(d, i); }

ComplexVector kron_vec(std::initializer_list<ComplexVector> parts) {
  ComplexVector out = ComplexVector::Ones(1);
  for (const auto& p : parts) out = kron(out, p);
  return out;
}

Dims qubits(std::initializer_list<const char*> labels) {
  Dims d;
  for (const char* l : labels) d.push_back({l, 2});
  return d;
}

MultipartiteState projector_state(Dims dims, const ComplexVector& v) {
  return MultipartiteState(std::move(dims), v * v.adjoint());
}

/// s (x) |0><0| on a fresh qubit.
MultipartiteState with_zero(const MultipartiteState& s, const std::string& label) {
  return tensor(s, MultipartiteState({{label, 2}}, basis_projector(2, 0)));
}

/// 1/2 sum_a |aa><aa| (x) |a><a|_r on (A, B, r).
MultipartiteState flag_extension(const std::string& r) {
  ComplexMatrix m = ComplexMatrix::Zero(8, 8);
  m(0, 0) = 0.5;
  m(7, 7) = 0.5;
  return MultipartiteState({{"A", 2}, {"B", 2}, {r, 2}}, m);
}

MultipartiteState ab_marginal(const MultipartiteState& s) { return partial_trace(s, {"A", "B"}); }

MultipartiteState dephase_label(const PureState& psi, const std::string& label,
                                const ComplexMatrix& basis) {
  return apply(dephasing_in_basis(basis), psi.density(), label);
}

/// W with columns |e> -> |e>|0>, E_A leading.
Isometry keep_as_ea(int d) {
  ComplexMatrix w = ComplexMatrix::Zero(2 * d, d);
  for (int e = 0; e < d; ++e) w(2 * e, e) = 1.0;
  return Isometry(w);
}

ComplexMatrix hh() { return kron(hadamard(), hadamard()); }

struct Witnesses {
  double i_down, i_down_star, i_sq, j_down, j_down_star;
};

Witnesses phi1_witnesses(const MultipartiteState& s) {
  const Dims five = qubits({"A", "B", "E", "FA", "FB"});
  const PureState phi(five, kron_vec({bell_vector(0, 0), ket(2, 0), ket(2, 0), ket(2, 0)}));
  return {i_down_at(s, identity_channel(2)),
          i_down_star_at(s, with_zero(s, "F"), "F"),
          i_sq_at(s, with_zero(ab_marginal(s), "R"), "R"),
          j_down_at(s, phi, "FA", "FB", identity_channel(2)),
          j_down_star_at(s, keep_as_ea(2), 2, with_zero(s, "F"), "F")};
}

Witnesses phi2_witnesses(const MultipartiteState& s) {
  const Dims five = qubits({"A", "B", "E", "FA", "FB"});
  ComplexVector v = ComplexVector::Zero(32);
  for (int e = 0; e < 2; ++e) v += kron_vec({bell_vector(0, e), ket(2, e), ket(2, e), ket(2, 0)});
  const PureState phi(five, v / std::sqrt(2.0));

  ComplexMatrix ext = ComplexMatrix::Zero(16, 16);
  for (int e = 0; e < 2; ++e) {
    const ComplexVector w = kron_vec({bell_vector(0, e), ket(2, e), ket(2, e)});
    ext += 0.5 * w * w.adjoint();
  }
  return {i_down_at(s, replacement(basis_projector(2, 0), 2)),
          i_down_star_at(s, with_zero(s, "F"), "F"),
          i_sq_at(s, flag_extension("R"), "R"),
          j_down_at(s, phi, "FA", "FB", dephasing(2)),
          j_down_star_at(s, keep_as_ea(2), 2, MultipartiteState(qubits({"A", "B", "E", "F"}), ext),
                         "F")};
}

Witnesses phi3_witnesses(const MultipartiteState& s) {
  const Dims five = {{"A", 2}, {"B", 2}, {"E", 4}, {"FA", 2}, {"FB", 2}};
  const Dims purified = {{"A", 2}, {"B", 2}, {"E", 4}, {"F", 4}};
  ComplexVector v = ComplexVector::Zero(64);
  ComplexVector u = ComplexVector::Zero(64);
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) {
      v += kron_vec({bell_vector(p, q), ket(4, 2 * p + q), bell_vector(p, q)});
      u += kron_vec({bell_vector(p, q), ket(4, 2 * p + q), ket(4, 2 * p + q)});
    }
  }
  const PureState phi(five, v / 2.0);
  const MultipartiteState ext = dephase_label(PureState(purified, u / 2.0), "F", hh());
  return {i_down_at(s, replacement(basis_projector(4, 0), 4)),
          i_down_star_at(s, with_zero(s, "F"), "F"),
          i_sq_at(s, with_zero(ab_marginal(s), "R"), "R"),
          j_down_at(s, phi, "FA", "FB", dephasing_in_basis(hh())),
          j_down_star_at(s, Isometry(bell_basis()), 2, ext, "F")};
}

Witnesses psi1_star_witnesses(const MultipartiteState& s) {
  const Dims five = qubits({"A", "B", "E", "FA", "FB"});
  ComplexVector v = ComplexVector::Zero(32);
  for (int a = 0; a < 2; ++a) {
    v += kron_vec({ket(2, a), ket(2, a), ket(2, 0), ket(2, a), ket(2, 0)});
  }
  const PureState phi(five, v / std::sqrt(2.0));
  ComplexMatrix ext = ComplexMatrix::Zero(16, 16);
  for (int a = 0; a < 2; ++a) {
    const ComplexVector w = kron_vec({ket(2, a), ket(2, a), ket(2, 0), ket(2, a)});
    ext += 0.5 * w * w.adjoint();
  }
  const MultipartiteState flagged(qubits({"A", "B", "E", "F"}), ext);
  return {i_down_at(s, identity_channel(2)),
          i_down_star_at(s, flagged, "F"),
          i_sq_at(s, flag_extension("R"), "R"),
          j_down_at(s, phi, "FA", "FB", identity_channel(2)),
          j_down_star_at(s, Isometry(ComplexMatrix::Identity(2, 2)), 2, flagged, "F")};
}

Witnesses psi1_witnesses(const MultipartiteState& s) {
  const Dims five = qubits({"A", "B", "E", "FA", "FB"});
  ComplexVector v = ComplexVector::Zero(32);
  for (int a = 0; a < 2; ++a) {
    v += kron_vec({ket(2, a), ket(2, a), ket(2, a), ket(2, 0), ket(2, 0)});
  }
  const PureState phi(five, v / std::sqrt(2.0));
  return {i_down_at(s, dephasing(2)),
          i_down_star_at(s, with_zero(s, "F"), "F"),
          i_sq_at(s, flag_extension("R"), "R"),
          j_down_at(s, phi, "FA", "FB", dephasing(2)),
          j_down_star_at(s, keep_as_ea(2), 2, with_zero(s, "F"), "F")};
}

Witnesses psi2_star_witnesses(const MultipartiteState& s) {
  const Dims five = qubits({"A", "B", "E", "FA", "FB"});
  const Dims purified = {{"A", 2}, {"B", 2}, {"E", 2}, {"F", 4}};
  ComplexVector v = ComplexVector::Zero(32);
  ComplexVector u = ComplexVector::Zero(32);
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) {
      v += kron_vec({bell_vector(p, q), ket(2, p), bell_vector(p, q)});
      u += kron_vec({bell_vector(p, q), ket(2, p), ket(4, 2 * p + q)});
    }
  }
  const PureState phi(five, v / 2.0);
  const ComplexMatrix ih = kron(ComplexMatrix::Identity(2, 2), hadamard());
  const MultipartiteState ext = dephase_label(PureState(purified, u / 2.0), "F", ih);
  return {i_down_at(s, replacement(basis_projector(2, 0), 2)),
          i_down_star_at(s, with_zero(s, "F"), "F"),
          i_sq_at(s, with_zero(ab_marginal(s), "R"), "R"),
          j_down_at(s, phi, "FA", "FB", dephasing_in_basis(hadamard())),
          j_down_star_at(s, keep_as_ea(2), 2, ext, "F")};
}

Witnesses psi2_witnesses(const MultipartiteState& s) {
  const Dims five = {{"A", 2}, {"B", 2}, {"E", 4}, {"FA", 2}, {"FB", 2}};
  const Dims purified = {{"A", 2}, {"B", 2}, {"E", 4}, {"F", 2}};
  ComplexVector v = ComplexVector::Zero(64);
  ComplexVector u = ComplexVector::Zero(32);
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) {
      v += kron_vec({bell_vector(p, q), ket(4, 2 * p + q), ket(2, p), ket(2, 0)});
      u += kron_vec({bell_vector(p, q), ket(4, 2 * p + q), ket(2, p)});
    }
  }
  const PureState phi(five, v / 2.0);
  const MultipartiteState ext = dephase_label(PureState(purified, u / 2.0), "F", hadamard());
  const ComplexMatrix ih = kron(ComplexMatrix::Identity(2, 2), hadamard());
  return {i_down_at(s, replacement(basis_projector(4, 0), 4)),
          i_down_star_at(s, with_zero(s, "F"), "F"),
          i_sq_at(s, with_zero(ab_marginal(s), "R"), "R"),
          j_down_at(s, phi, "FA", "FB", dephasing_in_basis(ih)),
          j_down_star_at(s, Isometry(bell_basis()), 2, ext, "F")};
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

OptimizerConfig with_seed(OptimizerConfig cfg, std::uint64_t seed) {
  cfg.seed = seed;
  return cfg;
}

}  // namespace

MonotoneRow witness_row(const std::string& name) {
  const MultipartiteState s = make(name).state;
  Witnesses w{};
  if (name == "phi1") {
    w = phi1_witnesses(s);
  } else if (name == "phi2") {
    w = phi2_witnesses(s);
  } else if (name == "phi3") {
    w = phi3_witnesses(s);
  } else if (name == "psi1_star") {
    w = psi1_star_witnesses(s);
  } else if (name == "psi1") {
    w = psi1_witnesses(s);
  } else if (name == "psi2_star") {
    w = psi2_star_witnesses(s);
  } else if (name == "psi2") {
    w = psi2_witnesses(s);
  } else {
    throw InputError("no closed-form witnesses for '" + name + "'");
  }
  return {i_m(s), w.i_down, w.i_down_star, w.i_sq, w.j_down, w.j_down_star};
}

SuiteOptions acceptance_options() {
  SuiteOptions opt;
  opt.optimizer.restarts = 64;
  opt.classical.restarts = 16;
  return opt;
}

SuiteReport suite_table1(const SuiteOptions& opt) {
  static const char* kColumns[] = {"I_M", "I_down", "I_down_star", "I_sq", "J_down",
                                   "J_down_star"};
  static const Monotone kSearched[] = {Monotone::kIDown, Monotone::kIDownStar, Monotone::kISq,
                                       Monotone::kJDown, Monotone::kJDownStar};
  SuiteReport rep{"table1", {}};
  for (const auto& name : table1_names()) {
    const NamedState ns = make(name);
    const MonotoneRow expected = *ns.expected;
    const MonotoneRow closed = witness_row(name);
    for (int c = 0; c < 6; ++c) {
      rep.add(name + "/" + kColumns[c] + "/witness", closed[c], expected[c], 1e-6);
    }
    for (int c = 1; c < 6; ++c) {
      const MonotoneEstimate e = estimate(kSearched[c - 1], ns.state, opt.optimizer);
      rep.add(name + "/" + kColumns[c] + "/optimizer", e.value, expected[c], 1e-2,
              "restart " + std::to_string(e.restart) + ", evaluations " +
                  std::to_string(e.evaluations));
    }
  }
  return rep;
}

SuiteReport suite_fig3() {
  SuiteReport rep{"fig3", {}};
  for (const auto& arrow : fig3_arrows()) {
    const ConvertibilityVerdict v =
        check_convertibility(arrow.from, arrow.to, arrow.protocol, arrow.witness, 1e-8);
    rep.add_flag(arrow.name, v.ok, v.epsilon_achieved,
                 "epsilon " + fmt(v.epsilon_achieved) + ", witness residual " +
                     fmt(v.witness_report.choi_residual));
  }
  return rep;
}

SuiteReport suite_pauli() {
  SuiteReport rep{"pauli", {}};
  const PauliReport pr = pauli_identity_suite();
  for (const auto& c : pr.checks) {
    std::string idx;
    for (int i : c.indices) idx += std::to_string(i);
    rep.add(c.identity + "/" + idx, c.residual, 0.0, 1e-12);
  }
  return rep;
}

SuiteReport suite_monotonicity(const SuiteOptions& opt) {
  static const char* kClasses[] = {"local_a",     "local_b", "reversible_e", "broadcast_a",
                                   "broadcast_b", "comm_ae", "comm_be"};
  SuiteReport rep{"monotonicity", {}};
  Rng rng(opt.seed);
  std::vector<double> worst(7, -kInfinity);
  std::vector<int> violations(7, 0);
  const Dims dims = {{"A", 2}, {"A1", 2}, {"B", 2}, {"B1", 2}, {"E", 2}};
  for (int t = 0; t < opt.trials; ++t) {
    const SharedState s = share(random_state(dims, rng));
    const double before = cqmi(s);
    for (int cls = 0; cls < 7; ++cls) {
      const ProtocolStep step = random_free_step(cls, s, rng);
      const double increase = cqmi(run_step(step, s)) - before;
      worst[cls] = std::max(worst[cls], increase);
      if (increase > 1e-9) ++violations[cls];
    }
  }
  for (int cls = 0; cls < 7; ++cls) {
    rep.add_flag(std::string("cqmi_nonincreasing/") + kClasses[cls], violations[cls] == 0,
                 worst[cls],
                 std::to_string(opt.trials) + " trials, largest increase " + fmt(worst[cls]));
  }
  return rep;
}

SuiteReport suite_duality(const SuiteOptions& opt) {
  SuiteReport rep{"duality", {}};
  const std::pair<const char*, const char*> pairs[] = {
      {"phi2", "phi2"}, {"psi1", "psi1_star"}, {"psi2", "psi2_star"}, {"phi3", "phi3"}};
  for (const auto& [first, second] : pairs) {
    const MultipartiteState s1 = make(first).state;
    const MultipartiteState s2 = make(second).state;
    const double id = i_down(s1, opt.optimizer).value;
    const double ids = i_down_star(s2, opt.optimizer).value;
    rep.add(std::string("I_down(") + first + ")=I_down_star(" + second + ")", id, ids, 2e-3);
    const double jd = j_down(s1, opt.optimizer).value;
    const double jds = j_down_star(s2, opt.optimizer).value;
    rep.add(std::string("J_down(") + first + ")=J_down_star(" + second + ")", jd, jds, 2e-3);
  }
  return rep;
}

namespace {

MarkovDecomposition flag_decomposition() {
  MarkovDecomposition d;
  for (int a = 0; a < 2; ++a) {
    d.weights.push_back(0.5);
    d.left.push_back(projector_state({{"A", 2}, {"EL", 2}}, kron(ket(2, a), ket(2, a))));
    d.right.push_back(projector_state({{"B", 2}, {"ER", 2}}, kron(ket(2, a), ket(2, a))));
  }
  return d;
}

MarkovDecomposition bell_decomposition() {
  MarkovDecomposition d;
  d.weights = {1.0};
  d.left = {projector_state({{"A", 2}, {"EL", 2}}, bell_vector(0, 0))};
  d.right = {projector_state({{"B", 2}, {"ER", 2}}, bell_vector(1, 1))};
  return d;
}

MarkovDecomposition random_decomposition(std::uint64_t seed) {
  Rng rng(seed);
  MarkovDecomposition d;
  d.weights = {0.3, 0.7};
  for (int j = 0; j < 2; ++j) {
    d.left.push_back(random_state({{"A", 2}, {"EL", 2}}, rng));
    d.right.push_back(random_state({{"B", 2}, {"ER", 2}}, rng));
  }
  return d;
}

}  // namespace

SuiteReport suite_markov() {
  SuiteReport rep{"markov", {}};
  const std::pair<const char*, MarkovDecomposition> cases[] = {
      {"flags", flag_decomposition()},
      {"bell_pairs", bell_decomposition()},
      {"random", random_decomposition(11)}};
  for (const auto& [name, d] : cases) {
    const Generation g = generate_markov(d);
    const MarkovVerdict v = is_markov(g.final_state);
    rep.add_flag(std::string("generated_is_markov/") + name, v.is_markov, v.cqmi_value,
                 "cqmi " + fmt(v.cqmi_value) + ", petz residual " + fmt(v.petz_residual));
    rep.add(std::string("petz_residual/") + name, v.petz_residual, 0.0, 1e-8);
    rep.add(std::string("generation_residual/") + name, g.residual, 0.0, 1e-8);
  }

  // Tensor products of Markov states stay Markov.
  const MultipartiteState flag = make("psi1_flag").state;
  const MultipartiteState other = relabel(
      generate_markov(bell_decomposition()).final_state, {{"A", "A2"}, {"B", "B2"}, {"E", "E2"}});
  const MultipartiteState prod = tensor(flag, other);
  const MarkovVerdict pv = is_markov(prod, Tripartition{{"A", "A2"}, {"B", "B2"}, {"E", "E2"}});
  rep.add_flag("tensor_product_is_markov", pv.is_markov, pv.cqmi_value,
               "cqmi " + fmt(pv.cqmi_value));

  // Mixtures of Markov states need not be Markov.
  for (double lam : {0.0, 1.0}) {
    const MarkovVerdict v = is_markov(make("rho_bar", lam).state);
    rep.add_flag("rho_bar(" + fmt(lam) + ")_is_markov", v.is_markov, v.cqmi_value);
  }
  const MultipartiteState mix = make("rho_bar", 0.5).state;
  rep.add("rho_bar(0.5)/cqmi", cqmi(mix, abe()), 1.0, 1e-9);
  rep.add_flag("rho_bar(0.5)_not_markov", !is_markov(mix).is_markov, cqmi(mix, abe()));
  return rep;
}

double classical_grid_minimum(const ClassicalDist& p, double step) {
  if (p.nz() != 2) throw InputError("grid oracle needs |Z| = 2");
  const int n = static_cast<int>(std::lround(1.0 / step));
  double best = kInfinity;
  for (int i = 0; i <= n; ++i) {
    for (int k = 0; k <= n; ++k) {
      const double a = static_cast<double>(i) / n;
      const double b = static_cast<double>(k) / n;
      const StochasticMap t(2, 2, {a, b, 1.0 - a, 1.0 - b});
      best = std::min(best, classical_intrinsic_at(p, t));
    }
  }
  return best;
}

SuiteReport suite_classical(const SuiteOptions& opt) {
  SuiteReport rep{"classical", {}};
  const ClassicalDist p1 = classical_p1();
  const ClassicalDist p2 = classical_p2();

  rep.add("P_I/I_M", classical_cmi(p1), 1.0, 1e-6);
  rep.add("P_II/I_M", classical_cmi(p2), 1.0, 1e-6);
  rep.add("P_I/I_down/witness", classical_intrinsic_at(p1, StochasticMap::identity(2)), 1.0,
          1e-6);
  rep.add("P_II/I_down/witness", classical_intrinsic_at(p2, StochasticMap::constant(2, 1)), 0.0,
          1e-6);
  rep.add("P_I/I_down/optimizer", classical_intrinsic(p1, opt.classical).value, 1.0, 5e-3);
  rep.add("P_II/I_down/optimizer", classical_intrinsic(p2, opt.classical).value, 0.0, 5e-3);

  // Random small distributions against the brute-force grid.
  Rng rng(opt.seed + 101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> w(8);
    double total = 0.0;
    for (auto& x : w) total += (x = u(rng));
    for (auto& x : w) x /= total;
    const ClassicalDist p(2, 2, 2, w);
    const double grid = classical_grid_minimum(p);
    const double found = classical_intrinsic(p, opt.classical).value;
    rep.add("grid_agreement/" + std::to_string(t), found, grid, 5e-3);
  }

  // One-time-pad generation from P_{I,d}.
  std::vector<double> w(12);
  double total = 0.0;
  for (auto& x : w) total += (x = u(rng));
  for (auto& x : w) x /= total;
  const std::pair<const char*, ClassicalDist> targets[] = {
      {"P_I", p1}, {"P_II", p2}, {"random", ClassicalDist(2, 2, 3, w)}};
  for (const auto& [name, target] : targets) {
    const ClassicalGeneration g = classical_generate(target, target.ny());
    rep.add(std::string("one_time_pad/") + name + "/residual", g.residual, 0.0, 1e-12);
    rep.add(std::string("one_time_pad/") + name + "/independence", g.m_dependence, 0.0, 1e-12);
  }
  return rep;
}

SuiteReport suite_dilution(const SuiteOptions& opt) {
  SuiteReport rep{"dilution", {}};
  // GHZ from one ebit: Alice copies her half into A0 and sends it to Eve.
  ComplexMatrix copy = ComplexMatrix::Zero(4, 2);
  copy(0, 0) = 1.0;
  copy(3, 1) = 1.0;
  const PureState ghz(qubits({"A", "B", "E"}),
                      (kron_vec({ket(2, 0), ket(2, 0), ket(2, 0)}) +
                       kron_vec({ket(2, 1), ket(2, 1), ket(2, 1)})) /
                          std::sqrt(2.0));
  const DilutionResult r =
      dilution_step(ghz, Isometry(copy), Isometry(ComplexMatrix::Identity(2, 2)), 32);
  rep.add_flag("ghz_from_ebit", r.verdict.ok, r.verdict.epsilon_achieved,
               "epsilon " + fmt(r.verdict.epsilon_achieved));
  rep.add("ghz_from_ebit/fidelity", r.fidelity, 1.0, 1e-8);
  rep.add("ghz_from_ebit/searched_fidelity", r.search_fidelity.value_or(0.0), 1.0, 1e-6);

  // The same isometries fail to produce a Bell pair with a product E.
  const PureState bell_e(qubits({"A", "B", "E"}),
                         kron_vec({bell_vector(0, 0), ket(2, 0)}));
  const DilutionResult bad =
      dilution_step(bell_e, Isometry(copy), Isometry(ComplexMatrix::Identity(2, 2)));
  rep.add_flag("copy_cannot_keep_ebit", !bad.verdict.ok, bad.fidelity,
               "fidelity " + fmt(bad.fidelity));

  const MultipartiteState ghz_ab = partial_trace(ghz.density(), {"A", "B"});
  rep.add("E_P(ghz_ab)", e_p(ghz_ab, opt.optimizer).value, 1.0, 1e-3);
  return rep;
}

SuiteReport suite_drec(const SuiteOptions& opt) {
  SuiteReport rep{"drec", {}};
  const std::uint64_t seeds[] = {opt.optimizer.seed, opt.optimizer.seed + 1,
                                 opt.optimizer.seed + 2};
  for (const char* name : {"phi1", "phi2"}) {
    const MultipartiteState s = make(name).state;
    rep.add(std::string(name) + "/petz", d_rec_at(s, petz_recovery(s)), 2.0, 1e-9);
    double lo = kInfinity, hi = -kInfinity;
    for (auto seed : seeds) {
      const double v = d_rec(s, with_seed(opt.optimizer, seed)).value;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      rep.add(std::string(name) + "/seed" + std::to_string(seed), v, 2.0, 1e-3);
    }
    rep.add(std::string(name) + "/seed_spread", hi - lo, 0.0, 1e-3);
  }
  for (const char* name : {"psi1_flag"}) {
    const MultipartiteState s = make(name).state;
    rep.add(std::string(name) + "/zero_on_markov", d_rec(s, opt.optimizer).value, 0.0, 1e-8);
  }
  const MultipartiteState gen = generate_markov(random_decomposition(5)).final_state;
  rep.add("generated/zero_on_markov", d_rec(gen, opt.optimizer).value, 0.0, 1e-8);
  return rep;
}

std::vector<SuiteReport> run_suite(const std::string& name, const SuiteOptions& opt) {
  if (name == "table1") return {suite_table1(opt)};
  if (name == "fig3") return {suite_fig3()};
  if (name == "pauli") return {suite_pauli()};
  if (name == "classical") return {suite_classical(opt)};
  if (name == "properties") {
    return {suite_monotonicity(opt), suite_duality(opt), suite_markov(), suite_dilution(opt),
            suite_drec(opt)};
  }
  throw InputError("unknown suite '" + name + "'");
}

}  // namespace qmarkov
