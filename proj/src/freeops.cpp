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

#include "qmarkov/freeops.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/SVD>

#include "qmarkov/catalog.hpp"
#include "qmarkov/entropy.hpp"
#include "qmarkov/search.hpp"

namespace qmarkov {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Party owner_of(const SharedState& s, const std::string& label) {
  auto it = s.owner.find(label);
  if (it == s.owner.end()) throw LabelError("no owner recorded for '" + label + "'");
  return it->second;
}

void require_owned(const SharedState& s, const Labels& labels, Party p, const char* what) {
  for (const auto& l : labels) {
    if (owner_of(s, l) != p) {
      throw LabelError(std::string(what) + ": '" + l + "' is not held by " + party_name(p));
    }
  }
}

SharedState transfer(const SharedState& s, MultipartiteState next, const Labels& removed,
                     const std::vector<std::pair<std::string, Party>>& added) {
  SharedState out{std::move(next), s.owner};
  for (const auto& l : removed) out.owner.erase(l);
  for (const auto& [l, p] : added) out.owner[l] = p;
  return out;
}

template <Party P>
SharedState run_local(const LocalStep<P>& st, const SharedState& s) {
  require_owned(s, st.inputs, P, "local step");
  MultipartiteState next = apply(st.channel, s.state, st.inputs, st.outputs);
  std::vector<std::pair<std::string, Party>> added;
  for (const auto& o : st.outputs) added.emplace_back(o.label, P);
  return transfer(s, std::move(next), st.inputs, added);
}

SharedState run_reversible(const ReversibleE& st, const SharedState& s) {
  require_owned(s, st.inputs, Party::kE, "reversible step");
  const ReversibilityReport rep = verify_reversible(st.pair);
  if (!rep.ok) {
    throw ContractError("Eve's operation is not reversible (Choi residual " +
                        std::to_string(rep.choi_residual) + ")");
  }
  MultipartiteState next = apply(st.pair.forward, s.state, st.inputs, st.outputs);
  std::vector<std::pair<std::string, Party>> added;
  for (const auto& o : st.outputs) added.emplace_back(o.label, Party::kE);
  return transfer(s, std::move(next), st.inputs, added);
}

template <Party P>
SharedState run_broadcast(const BroadcastStep<P>& st, const SharedState& s) {
  constexpr Party kOther = P == Party::kA ? Party::kB : Party::kA;
  require_owned(s, st.inputs, P, "broadcast");
  require_owned(s, st.continuation_inputs, kOther, "broadcast continuation");
  const int n = static_cast<int>(st.instrument.size());
  if (n == 0) throw ShapeError("broadcast needs at least one outcome");
  if (st.eve_register.empty()) throw LabelError("Eve always receives the broadcast");
  if (!st.continuation.empty() && static_cast<int>(st.continuation.size()) != n) {
    throw ShapeError("one continuation per outcome is required");
  }
  if (st.continuation.empty() && !st.continuation_inputs.empty()) {
    throw ShapeError("continuation inputs given without continuation channels");
  }
  int c_in = 1;
  for (const auto& l : st.continuation_inputs) c_in *= s.state.dim_of(l);
  const int c_out = st.continuation.empty() ? c_in : total_dim(st.continuation_outputs);

  const bool keep = !st.receiver_register.empty();
  std::vector<ComplexMatrix> kraus;
  for (int m = 0; m < n; ++m) {
    ComplexVector flag = basis_ket(n, m);
    if (keep) flag = kron(flag, basis_ket(n, m));
    const ComplexMatrix flag_col = flag;
    std::vector<ComplexMatrix> cont;
    if (st.continuation.empty()) {
      cont.push_back(ComplexMatrix::Identity(c_in, c_in));
    } else {
      const Channel& c = st.continuation[m];
      if (c.in_dim() != c_in || c.out_dim() != c_out) {
        throw ShapeError("continuation dimension mismatch");
      }
      cont = c.kraus();
    }
    for (const auto& k : st.instrument[m]) {
      for (const auto& l : cont) kraus.push_back(kron(kron(k, l), flag_col));
    }
  }
  const Channel joint(std::move(kraus));

  Labels inputs = st.inputs;
  inputs.insert(inputs.end(), st.continuation_inputs.begin(), st.continuation_inputs.end());
  Dims outputs = st.outputs;
  const Dims cont_outputs =
      st.continuation.empty() ? [&] {
        Dims d;
        for (const auto& l : st.continuation_inputs) d.push_back({l, s.state.dim_of(l)});
        return d;
      }()
                              : st.continuation_outputs;
  outputs.insert(outputs.end(), cont_outputs.begin(), cont_outputs.end());
  if (keep) outputs.push_back({st.receiver_register, n});
  outputs.push_back({st.eve_register, n});

  MultipartiteState next = apply(joint, s.state, inputs, outputs);
  std::vector<std::pair<std::string, Party>> added;
  for (const auto& o : st.outputs) added.emplace_back(o.label, P);
  for (const auto& o : cont_outputs) added.emplace_back(o.label, kOther);
  if (keep) added.emplace_back(st.receiver_register, kOther);
  added.emplace_back(st.eve_register, Party::kE);
  return transfer(s, std::move(next), inputs, added);
}

template <Party P>
SharedState run_comm(const QuantumComm<P>& st, const SharedState& s) {
  require_owned(s, st.labels, P, "quantum communication");
  SharedState out = s;
  for (const auto& l : st.labels) out.owner[l] = Party::kE;
  return out;
}

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

/// Maps |x>_E to |0>_E |x>_{E_c}: Eve moves her qubit into a fresh register.
ReversibleE shift_into_register() {
  ComplexMatrix w = ComplexMatrix::Zero(4, 2);
  w(0, 0) = 1.0;
  w(1, 1) = 1.0;
  return {isometry_pair(w), {"E"}, {{"E", 2}, {"Ec", 2}}};
}

/// |p, q>_E -> |q>_E |p>_{E_c}.
ReversibleE split_bell_index() {
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) u(2 * q + p, 2 * p + q) = 1.0;
  }
  return {unitary_pair(u), {"E"}, {{"E", 2}, {"Ec", 2}}};
}

Protocol coin_flip_protocol(const ComplexMatrix& flip) {
  Protocol p;
  p.then(LocalA{preparation(maximally_mixed(2)), {}, {{"Ac", 2}}});
  p.then(BroadcastA{basis_instrument(ComplexMatrix::Identity(2, 2), true),
                    {"Ac"},
                    {{"Ac", 2}},
                    "Bc",
                    "Ec",
                    {},
                    {},
                    {}});
  p.then(LocalB{discard(2), {"Bc"}, {}});
  p.then(LocalA{unitary_channel(controlled(2, flip)), {"Ac", "A"}, {{"Ac", 2}, {"A", 2}}});
  p.then(LocalA{discard(2), {"Ac"}, {}});
  return p;
}

std::vector<ComplexMatrix> pauli_frames() {
  std::vector<ComplexMatrix> ops;
  for (int k = 0; k < 2; ++k) {
    for (int l = 0; l < 2; ++l) ops.push_back(pauli_power(k, l));
  }
  return ops;
}

ReversibleE bell_readout(const std::string& x, const std::string& y, const std::string& out_x,
                         const std::string& out_y) {
  return {unitary_pair(bell_basis().adjoint()), {x, y}, {{out_x, 2}, {out_y, 2}}};
}

std::string fresh_label(const SharedState& s, const std::string& prefix) {
  for (int i = 0;; ++i) {
    const std::string l = prefix + std::to_string(i);
    if (!has_label(s.state.dims(), l)) return l;
  }
}

}  // namespace

std::string party_name(Party p) {
  switch (p) {
    case Party::kA:
      return "A";
    case Party::kB:
      return "B";
    case Party::kE:
      return "E";
  }
  return "?";
}

SharedState share(const MultipartiteState& s) {
  std::map<std::string, Party> owner;
  for (const auto& d : s.dims()) {
    switch (d.label.front()) {
      case 'A':
        owner[d.label] = Party::kA;
        break;
      case 'B':
        owner[d.label] = Party::kB;
        break;
      case 'E':
        owner[d.label] = Party::kE;
        break;
      default:
        throw LabelError("cannot infer the owner of '" + d.label + "'");
    }
  }
  return {s, std::move(owner)};
}

SharedState share(const MultipartiteState& s, std::map<std::string, Party> owner) {
  for (const auto& d : s.dims()) {
    if (!owner.count(d.label)) throw LabelError("no owner given for '" + d.label + "'");
  }
  for (const auto& [l, p] : owner) {
    if (!has_label(s.dims(), l)) throw LabelError("owner given for unknown label '" + l + "'");
  }
  return {s, std::move(owner)};
}

Labels owned_by(const SharedState& s, Party p) {
  Labels out;
  for (const auto& d : s.state.dims()) {
    if (owner_of(s, d.label) == p) out.push_back(d.label);
  }
  return out;
}

double cqmi(const SharedState& s) {
  const Labels a = owned_by(s, Party::kA);
  const Labels b = owned_by(s, Party::kB);
  if (a.empty() || b.empty()) return 0.0;
  return cqmi(s.state, Tripartition{a, b, owned_by(s, Party::kE)});
}

std::string step_class(const ProtocolStep& step) {
  return std::visit(Overloaded{
                        [](const LocalA&) { return std::string("local_a"); },
                        [](const LocalB&) { return std::string("local_b"); },
                        [](const ReversibleE&) { return std::string("reversible_e"); },
                        [](const BroadcastA&) { return std::string("broadcast_a"); },
                        [](const BroadcastB&) { return std::string("broadcast_b"); },
                        [](const QuantumCommAE&) { return std::string("comm_ae"); },
                        [](const QuantumCommBE&) { return std::string("comm_be"); },
                    },
                    step);
}

// ---------------------------------------------------------------------------

ReversiblePair identity_pair(int d) { return {identity_channel(d), identity_channel(d)}; }

ReversiblePair unitary_pair(const ComplexMatrix& u) {
  return {unitary_channel(u), unitary_channel(u.adjoint())};
}

ReversiblePair isometry_pair(const ComplexMatrix& w) {
  const Isometry iso(w);
  const int in = iso.in_dim();
  const int out = iso.out_dim();
  std::vector<ComplexMatrix> inv{w.adjoint()};
  const ComplexMatrix rest = ComplexMatrix::Identity(out, out) - w * w.adjoint();
  const EigenDecomposition eig = hermitian_eig(hermitize(rest));
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) < 0.5) continue;
    ComplexMatrix kk = ComplexMatrix::Zero(in, out);
    kk.row(0) = eig.vectors.col(k).adjoint();
    inv.push_back(std::move(kk));
  }
  return {iso.channel(), Channel(std::move(inv))};
}

ReversiblePair append_pair(int d, const ComplexMatrix& sigma) {
  const int m = static_cast<int>(sigma.rows());
  std::vector<ComplexMatrix> inv;
  const ComplexMatrix eye = ComplexMatrix::Identity(d, d);
  for (int k = 0; k < m; ++k) inv.push_back(kron(eye, ComplexMatrix(basis_ket(m, k).adjoint())));
  return {append_state(d, sigma), Channel(std::move(inv))};
}

std::vector<std::vector<ComplexMatrix>> basis_instrument(const ComplexMatrix& basis, bool keep) {
  const int d = static_cast<int>(basis.rows());
  if (basis.cols() != d) throw ShapeError("measurement basis must be square");
  std::vector<std::vector<ComplexMatrix>> out;
  for (int m = 0; m < d; ++m) {
    const ComplexMatrix bra = basis.col(m).adjoint();
    if (keep) {
      out.push_back({ComplexMatrix(basis_ket(d, m)) * bra});
    } else {
      out.push_back({bra});
    }
  }
  return out;
}

Channel conditional_preparation(const std::vector<ComplexMatrix>& states) {
  const int n = static_cast<int>(states.size());
  if (n == 0) throw ShapeError("conditional preparation needs states");
  const int dx = static_cast<int>(states.front().rows());
  std::vector<ComplexMatrix> kraus;
  for (int j = 0; j < n; ++j) {
    if (states[j].rows() != dx || states[j].cols() != dx) {
      throw ShapeError("conditional states differ in size");
    }
    const EigenDecomposition eig = hermitian_eig(hermitize(states[j]));
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
      if (eig.values(k) <= 1e-14) continue;
      ComplexMatrix kk = ComplexMatrix::Zero(n * dx, n);
      kk.col(j) = kron(basis_ket(n, j), ComplexVector(std::sqrt(eig.values(k)) *
                                                      eig.vectors.col(k)));
      kraus.push_back(std::move(kk));
    }
  }
  return Channel(std::move(kraus));
}

ComplexMatrix controlled_family(const std::vector<ComplexMatrix>& ops) {
  const int n = static_cast<int>(ops.size());
  if (n == 0) throw ShapeError("controlled family needs operators");
  const int d = static_cast<int>(ops.front().rows());
  ComplexMatrix out = ComplexMatrix::Zero(n * d, n * d);
  for (int j = 0; j < n; ++j) {
    if (ops[j].rows() != d || ops[j].cols() != d) throw ShapeError("controlled ops differ in size");
    out.block(j * d, j * d, d, d) = ops[j];
  }
  return out;
}

ReversibleE rename_eve(const std::string& from, const std::string& to, int dim) {
  return {identity_pair(dim), {from}, {{to, dim}}};
}

// ---------------------------------------------------------------------------

SharedState run_step(const ProtocolStep& step, const SharedState& s) {
  return std::visit(Overloaded{
                        [&](const LocalA& st) { return run_local(st, s); },
                        [&](const LocalB& st) { return run_local(st, s); },
                        [&](const ReversibleE& st) { return run_reversible(st, s); },
                        [&](const BroadcastA& st) { return run_broadcast(st, s); },
                        [&](const BroadcastB& st) { return run_broadcast(st, s); },
                        [&](const QuantumCommAE& st) { return run_comm(st, s); },
                        [&](const QuantumCommBE& st) { return run_comm(st, s); },
                    },
                    step);
}

SharedState run(const Protocol& p, const SharedState& s) {
  SharedState cur = s;
  for (const auto& step : p.steps) cur = run_step(step, cur);
  return cur;
}

MultipartiteState run(const Protocol& p, const MultipartiteState& s) {
  return run(p, share(s)).state;
}

ConvertibilityVerdict check_convertibility(const MultipartiteState& s1,
                                           const MultipartiteState& s2, const Protocol& p,
                                           const ReversibleE& v, double eps) {
  const SharedState target = share(s2);
  require_owned(target, v.inputs, Party::kE, "reversible witness");
  ConvertibilityVerdict verdict{0.0, eps, v, verify_reversible(v.pair), false};
  if (!verdict.witness_report.ok) throw ContractError("reversible witness fails verification");

  const MultipartiteState produced = run(p, s1);
  const MultipartiteState expected = apply(v.pair.forward, s2, v.inputs, v.outputs);
  Labels lp = produced.labels();
  Labels le = expected.labels();
  std::sort(lp.begin(), lp.end());
  std::sort(le.begin(), le.end());
  if (lp != le) throw ShapeError("protocol output and witness output carry different labels");
  const MultipartiteState aligned = permute_systems(expected, produced.labels());
  if (aligned.dims() != produced.dims()) {
    throw ShapeError("protocol output and witness output differ in dimensions");
  }
  verdict.epsilon_achieved = trace_norm_distance(produced, aligned);
  verdict.ok = verdict.epsilon_achieved <= eps;
  return verdict;
}

// ---------------------------------------------------------------------------

namespace {

struct DecompositionShape {
  int n, da, dl, db, dr;
};

DecompositionShape validate(const MarkovDecomposition& d) {
  const std::size_t n = d.weights.size();
  if (n == 0 || d.left.size() != n || d.right.size() != n) {
    throw ConsistencyError("decomposition lists differ in length");
  }
  double total = 0.0;
  for (double w : d.weights) {
    if (w < 0.0) throw ConsistencyError("negative weight in decomposition");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-10) throw ConsistencyError("weights do not sum to one");
  auto two = [](const MultipartiteState& s) {
    if (s.dims().size() != 2) throw ConsistencyError("conditional states need two factors");
    return std::pair{s.dims()[0].dim, s.dims()[1].dim};
  };
  const auto [da, dl] = two(d.left.front());
  const auto [db, dr] = two(d.right.front());
  for (std::size_t j = 0; j < n; ++j) {
    if (two(d.left[j]) != std::pair{da, dl} || two(d.right[j]) != std::pair{db, dr}) {
      throw ConsistencyError("conditional states differ in shape");
    }
  }
  const int nn = static_cast<int>(n);
  if (da * db * nn * dl * dr > kMaxTotalDim) throw ShapeError("decomposition too large");
  return {nn, da, dl, db, dr};
}

}  // namespace

MultipartiteState markov_target(const MarkovDecomposition& d) {
  const DecompositionShape sh = validate(d);
  const int de = sh.n * sh.dl * sh.dr;
  const MultipartiteState zero_shape(
      {{"A", sh.da}, {"EL", sh.dl}, {"B", sh.db}, {"ER", sh.dr}, {"EJ", sh.n}},
      [&] {
        ComplexMatrix m = ComplexMatrix::Zero(sh.da * sh.dl * sh.db * sh.dr * sh.n,
                                              sh.da * sh.dl * sh.db * sh.dr * sh.n);
        for (int j = 0; j < sh.n; ++j) {
          m += d.weights[j] * kron(kron(d.left[j].matrix(), d.right[j].matrix()),
                                   basis_projector(sh.n, j));
        }
        return m;
      }());
  const MultipartiteState ordered = permute_systems(zero_shape, {"A", "B", "EJ", "EL", "ER"});
  return MultipartiteState({{"A", sh.da}, {"B", sh.db}, {"E", de}}, ordered.matrix());
}

MultipartiteState trivial_state() {
  return MultipartiteState({{"E", 1}}, ComplexMatrix::Identity(1, 1));
}

Generation generate_markov(const MarkovDecomposition& d) {
  const DecompositionShape sh = validate(d);
  const int de = sh.n * sh.dl * sh.dr;
  std::vector<ComplexMatrix> sig, tau;
  ComplexMatrix weights = ComplexMatrix::Zero(sh.n, sh.n);
  for (int j = 0; j < sh.n; ++j) {
    sig.push_back(d.left[j].matrix());
    tau.push_back(d.right[j].matrix());
    weights(j, j) = d.weights[j];
  }
  Protocol p;
  p.then(LocalA{preparation(weights), {}, {{"Aj", sh.n}}});
  p.then(BroadcastA{basis_instrument(ComplexMatrix::Identity(sh.n, sh.n), true),
                    {"Aj"},
                    {{"Aj", sh.n}},
                    "Bj",
                    "Ej",
                    {},
                    {},
                    {}});
  p.then(LocalA{conditional_preparation(sig), {"Aj"}, {{"Aj", sh.n}, {"A", sh.da}, {"EL", sh.dl}}});
  p.then(QuantumCommAE{{"EL"}});
  p.then(LocalA{discard(sh.n), {"Aj"}, {}});
  p.then(LocalB{conditional_preparation(tau), {"Bj"}, {{"Bj", sh.n}, {"B", sh.db}, {"ER", sh.dr}}});
  p.then(QuantumCommBE{{"ER"}});
  p.then(LocalB{discard(sh.n), {"Bj"}, {}});
  p.then(ReversibleE{identity_pair(de), {"E", "Ej", "EL", "ER"}, {{"E", de}}});

  const MultipartiteState initial = trivial_state();
  const MultipartiteState out = permute_systems(run(p, initial), {"A", "B", "E"});
  const double residual = trace_norm_distance(out, markov_target(d));
  return {std::move(p), initial, out, ReversibleE{identity_pair(de), {"E"}, {{"E", de}}},
          residual};
}

Generation generate_from_max_nonmarkovian(const MultipartiteState& target, int d) {
  for (const char* l : {"A", "B", "E"}) {
    if (!has_label(target.dims(), l)) throw LabelError("target needs factors A, B and E");
  }
  if (target.dims().size() != 3) throw LabelError("target must have exactly A, B and E");
  const MultipartiteState t = permute_systems(target, {"A", "B", "E"});
  if (t.dim_of("A") != d || t.dim_of("B") != d) {
    throw ShapeError("A and B of the target must have dimension d");
  }
  const int de = t.dim_of("E");
  const MultipartiteState initial = make("phi1_d", static_cast<double>(d)).state;

  // Bell basis Phi_ab = (X^a Z^b (x) I)|Phi_d> on (Bt, A); Bob undoes X^a Z^b.
  ComplexVector phi = ComplexVector::Zero(d * d);
  for (int i = 0; i < d; ++i) phi(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  const ComplexMatrix x = shift(d);
  const ComplexMatrix z = clock(d);
  std::vector<std::vector<ComplexMatrix>> instrument;
  std::vector<Channel> corrections;
  ComplexMatrix xa = ComplexMatrix::Identity(d, d);
  for (int a = 0; a < d; ++a) {
    ComplexMatrix zb = ComplexMatrix::Identity(d, d);
    for (int b = 0; b < d; ++b) {
      const ComplexMatrix u = xa * zb;
      const ComplexVector v = kron(u, ComplexMatrix::Identity(d, d)) * phi;
      instrument.push_back({ComplexMatrix(v.adjoint())});
      corrections.push_back(unitary_channel(u));
      zb = zb * z;
    }
    xa = xa * x;
  }

  Protocol p;
  p.then(LocalA{preparation(t.matrix()), {}, {{"At", d}, {"Bt", d}, {"Et", de}}});
  p.then(QuantumCommAE{{"Et"}});
  p.then(BroadcastA{std::move(instrument), {"Bt", "A"}, {}, "", "Ec", std::move(corrections),
                    {"B"}, {{"B", d}}});
  p.then(rename_step<Party::kA>("At", "A", d));

  const ComplexMatrix junk = kron(basis_projector(2, 0), maximally_mixed(d * d));
  ReversibleE witness{append_pair(de, junk), {"E"}, {{"Et", de}, {"E", 2}, {"Ec", d * d}}};
  const MultipartiteState out = run(p, initial);
  const MultipartiteState expected =
      permute_systems(apply(witness.pair.forward, t, witness.inputs, witness.outputs), out.labels());
  const double residual = trace_norm_distance(out, expected);
  return {std::move(p), initial, out, std::move(witness), residual};
}

// ---------------------------------------------------------------------------

Protocol protocol_p1() { return coin_flip_protocol(pauli_z()); }
Protocol protocol_p1_prime() { return coin_flip_protocol(pauli_x()); }

MultipartiteState p2_input() {
  const MultipartiteState star =
      relabel(make("psi2_star").state, {{"A", "Ap"}, {"B", "Bp"}, {"E", "Ep"}});
  return tensor(star, make("double_phi").state);
}

Protocol protocol_p2() {
  const ComplexMatrix z_on_first = kron(pauli_z(), ComplexMatrix::Identity(2, 2));
  Protocol p;
  p.then(LocalA{unitary_channel(controlled(2, pauli_z())), {"Ap", "A"}, {{"Ap", 2}, {"A", 2}}});
  p.then(LocalB{unitary_channel(controlled(2, pauli_z())), {"Bp", "B"}, {{"Bp", 2}, {"B", 2}}});
  p.then(ReversibleE{unitary_pair(controlled(2, z_on_first)),
                     {"Ep", "EA", "EB"},
                     {{"Ep", 2}, {"EA", 2}, {"EB", 2}}});
  p.then(LocalA{discard(2), {"Ap"}, {}});
  p.then(LocalB{discard(2), {"Bp"}, {}});
  p.then(bell_readout("EA", "EB", "EA", "EB"));
  return p;
}

MultipartiteState psi2_star_squared() {
  const MultipartiteState s = make("psi2_star").state;
  return tensor(relabel(s, {{"A", "Ap"}, {"B", "Bp"}, {"E", "Ep"}}),
                relabel(s, {{"A", "App"}, {"B", "Bpp"}, {"E", "Epp"}}));
}

Protocol protocol_p3() {
  const ComplexMatrix bell00 = projector(bell_vector(0, 0));
  const ComplexMatrix frames = controlled_family(pauli_frames());
  Protocol p;
  p.then(LocalA{preparation(bell00), {}, {{"A", 2}, {"EA", 2}}});
  p.then(LocalA{unitary_channel(frames), {"Ap", "App", "A"}, {{"Ap", 2}, {"App", 2}, {"A", 2}}});
  p.then(LocalA{discard(4), {"Ap", "App"}, {}});
  p.then(QuantumCommAE{{"EA"}});
  p.then(ReversibleE{unitary_pair(frames), {"Ep", "Epp", "EA"}, {{"Ep", 2}, {"Epp", 2}, {"EA", 2}}});
  p.then(LocalB{preparation(bell00), {}, {{"B", 2}, {"EB", 2}}});
  p.then(LocalB{unitary_channel(frames), {"Bp", "Bpp", "B"}, {{"Bp", 2}, {"Bpp", 2}, {"B", 2}}});
  p.then(LocalB{discard(4), {"Bp", "Bpp"}, {}});
  p.then(QuantumCommBE{{"EB"}});
  p.then(bell_readout("EA", "EB", "EA", "EB"));
  return p;
}

Protocol protocol_pauli_twirl() {
  const ComplexMatrix frames = controlled_family(pauli_frames());
  Protocol p;
  p.then(LocalA{preparation(maximally_mixed(4)), {}, {{"Ap", 2}, {"App", 2}}});
  p.then(LocalA{unitary_channel(frames), {"Ap", "App", "A"}, {{"Ap", 2}, {"App", 2}, {"A", 2}}});
  p.then(LocalB{preparation(maximally_mixed(4)), {}, {{"Bp", 2}, {"Bpp", 2}}});
  p.then(LocalB{unitary_channel(frames), {"Bp", "Bpp", "B"}, {{"Bp", 2}, {"Bpp", 2}, {"B", 2}}});
  p.then(QuantumCommAE{{"A"}});
  p.then(QuantumCommBE{{"B"}});
  p.then(ReversibleE{unitary_pair(frames), {"E", "A"}, {{"E", 4}, {"A", 2}}});
  p.then(bell_readout("A", "B", "Ep", "Epp"));
  return p;
}

std::vector<Arrow> fig3_arrows() {
  auto st = [](const char* name) { return make(name).state; };
  std::vector<Arrow> arrows;

  arrows.push_back({"phi1 -> phi2", st("phi1"), st("phi2"), protocol_p1(), shift_into_register()});
  arrows.push_back(
      {"phi2 -> phi3", st("phi2"), st("phi3"), protocol_p1_prime(), split_bell_index()});

  {
    Protocol p;
    p.then(LocalA{dephasing(2), {"A"}, {{"A", 2}}});
    p.then(ReversibleE{append_pair(1, basis_projector(2, 0)), {}, {{"Ex", 2}}});
    arrows.push_back({"phi2 -> psi1_star", st("phi2"), st("psi1_star"), std::move(p),
                      {append_pair(2, maximally_mixed(2)), {"E"}, {{"Ex", 2}, {"E", 2}}}});
  }
  {
    const ComplexMatrix cnot = controlled(2, pauli_x());
    const ComplexMatrix cz = controlled(2, pauli_z());
    Protocol p;
    p.then(LocalA{preparation(basis_projector(2, 0)), {}, {{"Et", 2}}});
    p.then(LocalA{unitary_channel(cnot), {"A", "Et"}, {{"A", 2}, {"Et", 2}}});
    p.then(QuantumCommAE{{"Et"}});
    p.then(ReversibleE{unitary_pair(cz), {"E", "Et"}, {{"E", 2}, {"Et", 2}}});
    arrows.push_back({"phi2 -> psi1", st("phi2"), st("psi1"), std::move(p),
                      {append_pair(2, maximally_mixed(2)), {"E"}, {{"Et", 2}, {"E", 2}}}});
  }
  arrows.push_back({"psi1_star -> psi2_star", st("psi1_star"), st("psi2_star"),
                    protocol_p1_prime(), shift_into_register()});
  {
    Protocol p = protocol_p1_prime();
    p.then(ReversibleE{unitary_pair(hadamard()), {"E"}, {{"E", 2}}});
    arrows.push_back({"psi1 -> psi2", st("psi1"), st("psi2"), std::move(p), split_bell_index()});
  }
  {
    const ComplexMatrix h = hadamard();
    Protocol p;
    p.then(LocalA{compose(dephasing(2), unitary_channel(h)), {"A"}, {{"A", 2}}});
    p.then(LocalB{compose(dephasing(2), unitary_channel(h)), {"B"}, {{"B", 2}}});
    p.then(ReversibleE{identity_pair(4), {"E"}, {{"Ep", 2}, {"E", 2}}});
    arrows.push_back({"psi2 -> psi2_star", st("psi2"), st("psi2_star"), std::move(p),
                      {append_pair(2, maximally_mixed(2)), {"E"}, {{"E", 2}, {"Ep", 2}}}});
  }
  {
    const ComplexMatrix bell00 = projector(bell_vector(0, 0));
    Protocol p;
    p.then(rename_step<Party::kA>("A", "Ap", 2));
    p.then(rename_step<Party::kB>("B", "Bp", 2));
    p.then(rename_eve("E", "Ep", 2));
    p.then(LocalA{preparation(bell00), {}, {{"A", 2}, {"EA", 2}}});
    p.then(QuantumCommAE{{"EA"}});
    p.then(LocalB{preparation(bell00), {}, {{"B", 2}, {"EB", 2}}});
    p.then(QuantumCommBE{{"EB"}});
    p.then(protocol_p2());
    arrows.push_back(
        {"psi2_star -> psi2", st("psi2_star"), st("psi2"), std::move(p),
         {append_pair(4, maximally_mixed(2)), {"E"}, {{"EA", 2}, {"EB", 2}, {"Ep", 2}}}});
  }
  arrows.push_back(
      {"psi2_star^2 -> phi3", psi2_star_squared(), st("phi3"), protocol_p3(),
       {append_pair(4, maximally_mixed(4)), {"E"}, {{"EA", 2}, {"EB", 2}, {"Ep", 2}, {"Epp", 2}}}});
  arrows.push_back({"phi3 -> psi2_star^2", st("phi3"), psi2_star_squared(),
                    protocol_pauli_twirl(),
                    {append_pair(1, maximally_mixed(4)), {}, {{"E", 4}}}});

  for (const char* target : {"psi1", "phi3", "psi2_star"}) {
    Generation g = generate_from_max_nonmarkovian(st(target), 2);
    arrows.push_back({std::string("phi1 -> ") + target + " (teleportation)", g.initial,
                      st(target), std::move(g.protocol), std::move(g.witness)});
  }
  return arrows;
}

// ---------------------------------------------------------------------------

DilutionResult dilution_step(const PureState& psi_in, const Isometry& u1, const Isometry& u2,
                             int search_restarts) {
  for (const char* l : {"A", "B", "E"}) {
    if (!has_label(psi_in.dims(), l)) throw LabelError("dilution target needs A, B and E");
  }
  if (psi_in.dims().size() != 3) throw LabelError("dilution target must have exactly A, B, E");
  const PureState psi = permute_systems(psi_in, {"A", "B", "E"});
  const int da = psi.dims()[0].dim;
  const int db = psi.dims()[1].dim;
  const int de = psi.dims()[2].dim;
  const int d = u1.in_dim();
  if (u2.in_dim() != d) throw ShapeError("u1 and u2 must act on the two halves of Phi_d");
  if (u1.out_dim() % da != 0 || u2.out_dim() % db != 0) {
    throw ShapeError("isometry outputs must factor as target system times ancilla");
  }
  const int a0 = u1.out_dim() / da;
  const int b0 = u2.out_dim() / db;

  Protocol p;
  p.then(LocalA{u1.channel(), {"A"}, {{"A", da}, {"A0", a0}}});
  p.then(LocalB{u2.channel(), {"B"}, {{"B", db}, {"B0", b0}}});
  p.then(QuantumCommAE{{"A0"}});
  p.then(QuantumCommBE{{"B0"}});

  // Pure-state simulation of the same steps for the Uhlmann overlap.
  ComplexVector phi = ComplexVector::Zero(d * d);
  for (int i = 0; i < d; ++i) phi(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  PureState out({{"A", d}, {"B", d}, {"E", 2}}, kron(phi, basis_ket(2, 0)));
  out = apply_isometry(out, {"A"}, u1.matrix(), {{"A", da}, {"A0", a0}});
  out = apply_isometry(out, {"B"}, u2.matrix(), {{"B", db}, {"B0", b0}});
  out = permute_systems(out, {"A", "B", "E", "A0", "B0"});
  const ComplexMatrix x = reshape_bipartite(out, {"A", "B"});
  const ComplexMatrix y = reshape_bipartite(psi, {"A", "B"});
  const int k = 2 * a0 * b0;

  // Maximize |Tr(W G)| over isometries W; the optimum is the polar factor.
  const bool eve_side = k <= de;
  const ComplexMatrix g = eve_side ? ComplexMatrix(x.transpose() * y.conjugate())
                                   : ComplexMatrix(y.transpose() * x.conjugate());
  Eigen::JacobiSVD<ComplexMatrix> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const ComplexMatrix w = svd.matrixV() * svd.matrixU().adjoint();
  const double fidelity = std::min(1.0, svd.singularValues().sum());

  MultipartiteState initial = make("phi1_d", static_cast<double>(d)).state;
  ReversibleE witness{identity_pair(de), {"E"}, {{"E", de}}};
  if (eve_side) {
    p.then(ReversibleE{isometry_pair(w), {"E", "A0", "B0"}, {{"E", de}}});
  } else {
    witness = ReversibleE{isometry_pair(w), {"E"}, {{"E", 2}, {"A0", a0}, {"B0", b0}}};
  }
  ConvertibilityVerdict verdict = check_convertibility(initial, psi.density(), p, witness, 1e-8);

  std::optional<double> searched;
  if (search_restarts > 0) {
    const int rows = static_cast<int>(std::max(g.rows(), g.cols()));
    const int cols = static_cast<int>(std::min(g.rows(), g.cols()));
    SearchConfig cfg;
    cfg.restarts = search_restarts;
    cfg.max_iters = 3000;
    cfg.floor = -1.0;
    const Objective f = [&](const Point& pt) { return -std::abs((pt[0] * g).trace()); };
    const SearchResult r = minimize({{BlockKind::kStiefel, rows, cols}}, f, cfg);
    searched = -r.value;
  }
  return {std::move(p), std::move(initial), std::move(verdict), fidelity, searched};
}

// ---------------------------------------------------------------------------

ProtocolStep random_free_step(int cls, const SharedState& s, Rng& rng) {
  auto pick = [&](Party p) {
    const Labels held = owned_by(s, p);
    if (held.empty()) throw InputError(party_name(p) + " holds no factor");
    std::uniform_int_distribution<std::size_t> u(0, held.size() - 1);
    return held[u(rng)];
  };
  std::uniform_int_distribution<int> coin(0, 1);
  switch (cls) {
    case 0:
    case 1: {
      const Party p = cls == 0 ? Party::kA : Party::kB;
      const std::string l = pick(p);
      const int d = s.state.dim_of(l);
      Channel c = random_channel(d, d, 2, rng);
      if (p == Party::kA) return LocalA{std::move(c), {l}, {{l, d}}};
      return LocalB{std::move(c), {l}, {{l, d}}};
    }
    case 2: {
      const Labels held = owned_by(s, Party::kE);
      if (held.empty() || coin(rng) == 0) {
        const std::string fresh = fresh_label(s, "Er");
        const ComplexMatrix sigma = random_state({{fresh, 2}}, rng).matrix();
        return ReversibleE{append_pair(1, sigma), {}, {{fresh, 2}}};
      }
      const std::string l = pick(Party::kE);
      const int d = s.state.dim_of(l);
      return ReversibleE{unitary_pair(random_unitary(d, rng)), {l}, {{l, d}}};
    }
    case 3:
    case 4: {
      const Party p = cls == 3 ? Party::kA : Party::kB;
      const std::string l = pick(p);
      const int d = s.state.dim_of(l);
      auto inst = basis_instrument(random_unitary(d, rng), true);
      const std::string rr = fresh_label(s, p == Party::kA ? "Bm" : "Am");
      const std::string er = fresh_label(s, "Em");
      if (p == Party::kA) return BroadcastA{std::move(inst), {l}, {{l, d}}, rr, er, {}, {}, {}};
      return BroadcastB{std::move(inst), {l}, {{l, d}}, rr, er, {}, {}, {}};
    }
    case 5:
      return QuantumCommAE{{pick(Party::kA)}};
    case 6:
      return QuantumCommBE{{pick(Party::kB)}};
    default:
      throw InputError("step class must be in 0..6");
  }
}

}  // namespace qmarkov
