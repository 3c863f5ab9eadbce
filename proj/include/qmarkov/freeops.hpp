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

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qmarkov/channel.hpp"

namespace qmarkov {

/**
 * Free operations. A protocol is a sequence of steps from seven classes:
 * local operations by Alice or Bob, reversible operations by Eve, classical
 * broadcast from Alice or Bob, and quantum communication from Alice or Bob to
 * Eve. Ownership of every factor is tracked alongside the state.
 */

/// A reversible step whose witness fails verification.
struct ContractError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Party { kA, kB, kE };

std::string party_name(Party p);

struct SharedState {
  MultipartiteState state;
  std::map<std::string, Party> owner;
};

/// Infers owners from the first letter of each label (A, B or E); throws
/// LabelError for any other label.
SharedState share(const MultipartiteState& s);
/// Explicit owners; every label of `s` must be listed.
SharedState share(const MultipartiteState& s, std::map<std::string, Party> owner);

/// Labels held by party `p`, in state order.
Labels owned_by(const SharedState& s, Party p);

/// I(A-side : B-side | E-side); zero when Alice or Bob holds nothing.
double cqmi(const SharedState& s);

/*******************************************************************************
 * STEPS
 ******************************************************************************/

/// Channel applied by one party to factors it owns. Empty `inputs` prepares
/// fresh factors; empty `outputs` discards.
template <Party P>
struct LocalStep {
  Channel channel;
  Labels inputs;
  Dims outputs;
};
using LocalA = LocalStep<Party::kA>;
using LocalB = LocalStep<Party::kB>;

/// Eve's step. The pair is checked by verify_reversible every time it runs.
struct ReversibleE {
  ReversiblePair pair;
  Labels inputs;
  Dims outputs;
};

/**
 * The sender measures `inputs` with the instrument (one Kraus list per
 * outcome, mapping inputs to `outputs`) and announces the outcome m. Eve
 * always receives |m> on `eve_register`. The other honest party receives |m>
 * on `receiver_register`, and may instead consume it at once by applying the
 * per-outcome `continuation` to `continuation_inputs`; leaving
 * receiver_register empty means the copy is used and discarded. Fusing the
 * conditional step keeps intermediate states small; it equals appending the
 * register, applying the controlled channel and discarding the register.
 */
template <Party P>
struct BroadcastStep {
  std::vector<std::vector<ComplexMatrix>> instrument;
  Labels inputs;
  Dims outputs;
  std::string receiver_register;
  std::string eve_register;
  std::vector<Channel> continuation;
  Labels continuation_inputs;
  Dims continuation_outputs;
};
using BroadcastA = BroadcastStep<Party::kA>;
using BroadcastB = BroadcastStep<Party::kB>;

/// Moves ownership of `labels` from the sender to Eve.
template <Party P>
struct QuantumComm {
  Labels labels;
};
using QuantumCommAE = QuantumComm<Party::kA>;
using QuantumCommBE = QuantumComm<Party::kB>;

using ProtocolStep =
    std::variant<LocalA, LocalB, ReversibleE, BroadcastA, BroadcastB, QuantumCommAE, QuantumCommBE>;

/// "local_a", "local_b", "reversible_e", "broadcast_a", "broadcast_b",
/// "comm_ae", "comm_be".
std::string step_class(const ProtocolStep& step);

struct Protocol {
  std::vector<ProtocolStep> steps;

  Protocol& then(ProtocolStep step) {
    steps.push_back(std::move(step));
    return *this;
  }
  Protocol& then(const Protocol& other) {
    steps.insert(steps.end(), other.steps.begin(), other.steps.end());
    return *this;
  }
};

/*******************************************************************************
 * STEP HELPERS
 ******************************************************************************/

ReversiblePair identity_pair(int d);
ReversiblePair unitary_pair(const ComplexMatrix& u);
/// Isometry with a left inverse completed on the orthogonal complement.
ReversiblePair isometry_pair(const ComplexMatrix& w);
/// rho -> rho (x) sigma and its partial-trace inverse. d = 1 prepares sigma.
ReversiblePair append_pair(int d, const ComplexMatrix& sigma);

/// Projective measurement in the columns of `basis`. With `keep` the measured
/// register is left in |m>; otherwise it is consumed.
std::vector<std::vector<ComplexMatrix>> basis_instrument(const ComplexMatrix& basis, bool keep);

/// Register of dimension n in |j> -> |j> (x) states[j]; the states share a size.
Channel conditional_preparation(const std::vector<ComplexMatrix>& states);

/// Sum_j |j><j| (x) ops[j] on (control registers, target); control dimension is
/// ops.size().
ComplexMatrix controlled_family(const std::vector<ComplexMatrix>& ops);

template <Party P>
LocalStep<P> rename_step(const std::string& from, const std::string& to, int dim) {
  return {identity_channel(dim), {from}, {{to, dim}}};
}
ReversibleE rename_eve(const std::string& from, const std::string& to, int dim);

/*******************************************************************************
 * EXECUTION
 ******************************************************************************/

/// Throws LabelError on ownership violations, ShapeError on dimension
/// mismatch and ContractError when a reversible witness fails.
SharedState run_step(const ProtocolStep& step, const SharedState& s);
SharedState run(const Protocol& p, const SharedState& s);
/// Owners inferred by share().
MultipartiteState run(const Protocol& p, const MultipartiteState& s);

struct ConvertibilityVerdict {
  double epsilon_achieved = 0.0;
  double requested_epsilon = 0.0;
  ReversibleE reversible_witness;
  ReversibilityReport witness_report;
  bool ok = false;
};

/**
 * Computes || run(p, s1) - V(s2) ||_1 where V is the reversible witness on
 * Eve's side of s2. The two states must carry the same labels.
 */
ConvertibilityVerdict check_convertibility(const MultipartiteState& s1,
                                           const MultipartiteState& s2, const Protocol& p,
                                           const ReversibleE& v, double eps);

/*******************************************************************************
 * GENERATION
 ******************************************************************************/

/**
 * Markov chain data sum_j p_j sigma_j^{A E_L} (x) tau_j^{B E_R} (x) |j><j|^{E_J}.
 * Left states have factors (A, E_L) and right states (B, E_R).
 */
struct MarkovDecomposition {
  std::vector<double> weights;
  std::vector<MultipartiteState> left;
  std::vector<MultipartiteState> right;
};

/// The state on A, B, E (E = E_J E_L E_R) described by the data.
MultipartiteState markov_target(const MarkovDecomposition& d);

struct Generation {
  Protocol protocol;
  MultipartiteState initial;
  MultipartiteState final_state;
  ReversibleE witness;    ///< V with run(protocol, initial) = V(target)
  double residual = 0.0;  ///< trace distance to V(target)
};

/// 1-dimensional state held by Eve, the starting point of generation.
MultipartiteState trivial_state();

/// Alice draws J, broadcasts it, both sides prepare the conditional states,
/// send E_L and E_R to Eve and forget J. Throws ConsistencyError on invalid
/// data.
Generation generate_markov(const MarkovDecomposition& d);

/// Alice prepares `target` (labels A, B, E with A and B of dimension d), sends
/// E to Eve and teleports B to Bob through Phi_{I,d}.
Generation generate_from_max_nonmarkovian(const MultipartiteState& target, int d);

/*******************************************************************************
 * NAMED PROTOCOLS
 ******************************************************************************/

/// Coin flip broadcast to Bob and Eve (Eve keeps it on E_c), Bob discards his
/// copy, Alice applies sigma_z (P1) or sigma_x (P1') to A when the coin is 1.
Protocol protocol_p1();
Protocol protocol_p1_prime();

/// Psi_II*^{Ap Bp Ep} (x) Phi^{A B EA EB} -> Psi_II' on A, B, EA, EB followed
/// by Eve's Bell-to-computational basis change on (EA, EB).
Protocol protocol_p2();
MultipartiteState p2_input();

/**
 * Psi_II* (x) Psi_II* on (Ap, Bp, Ep, App, Bpp, Epp) -> Phi_III with E split
 * into (EA, EB). Each side prepares its half of the doubled Bell pair right
 * before using it so that no intermediate state exceeds kMaxTotalDim.
 */
Protocol protocol_p3();
MultipartiteState psi2_star_squared();

/// Alice and Bob each twirl their qubit with two private coins, send it to
/// Eve, who undoes the Pauli frame and reads out the Bell index.
Protocol protocol_pauli_twirl();

struct Arrow {
  std::string name;
  MultipartiteState from;
  MultipartiteState to;
  Protocol protocol;
  ReversibleE witness;
};

/// Every arrow of the convertibility diagram with its protocol and witness.
std::vector<Arrow> fig3_arrows();

/*******************************************************************************
 * DILUTION
 ******************************************************************************/

struct DilutionResult {
  Protocol protocol;
  MultipartiteState initial;     ///< Phi_{I,d} with d = u1.in_dim()
  ConvertibilityVerdict verdict;
  double fidelity = 0.0;         ///< |<psi| matched output>|
  /// Fidelity reached by the restart search over isometries, when requested.
  std::optional<double> search_fidelity;
};

/**
 * Alice and Bob apply u1: A -> A A0 and u2: B -> B B0 to a shared
 * Phi_{I,d}, then send A0 and B0 to Eve. Eve's side is matched to psi by the
 * Uhlmann isometry, obtained in closed form from the polar decomposition of
 * the overlap operator. With `search_restarts` > 0 the fidelity is also
 * maximized by restart search over isometries as a cross-check.
 */
DilutionResult dilution_step(const PureState& psi, const Isometry& u1, const Isometry& u2,
                             int search_restarts = 0);

/*******************************************************************************
 * RANDOM STEPS
 ******************************************************************************/

/// Random step of class `cls` (0..6 in ProtocolStep order) acting on the
/// factors of `s`; new factors use fresh labels.
ProtocolStep random_free_step(int cls, const SharedState& s, Rng& rng);

}  // namespace qmarkov
