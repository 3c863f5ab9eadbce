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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmarkov/channel.hpp"
#include "qmarkov/entropy.hpp"
#include "qmarkov/markov.hpp"

namespace qmarkov {

/**
 * Non-Markovianity monotones of a tripartite state.
 *
 * Every monotone except I_M is an infimum. Each comes in two forms: an
 * evaluator at a caller-supplied witness, and a heuristic minimizer that
 * returns an upper bound together with the witness that attains it.
 *
 * All routines first merge the three label groups of the Tripartition into
 * single factors labeled "A", "B" and "E" (the canonical form); witnesses
 * refer to those canonical labels.
 */

struct OptimizerConfig {
  int restarts = 16;
  /// Iterations every restart gets before the polish stage.
  int max_iters = 600;
  /// The best `polish_keep` restarts then continue for `polish_iters` more.
  int polish_keep = 4;
  int polish_iters = 15000;
  double step_tolerance = 1e-6;
  std::uint64_t seed = 1;
  /// Upper bounds on the dimension of extension and environment systems.
  /// Unset means (input dimension)^2.
  std::optional<int> extension_dim_cap;
  std::optional<int> env_dim_cap;
  /// Search dimensions. Unset means the input dimension of the system being
  /// processed, which is enough for every closed-form witness we know; the
  /// caps always apply on top.
  std::optional<int> extension_dim;
  std::optional<int> env_dim;
  int threads = 1;
};

enum class Monotone { kIM, kIDown, kIDownStar, kISq, kJDown, kJDownStar, kEP, kDRec };

std::string monotone_name(Monotone m);

struct MonotoneEstimate {
  double value = 0.0;
  bool converged = true;
  int iterations = 0;
  int evaluations = 0;
  int restart = 0;

  /// Channel part of the witness: T on E (I_down, J_down), T on the purifier
  /// F (I_down_star, I_sq, J_down_star), or the recovery map (D_rec).
  std::optional<Channel> channel;
  /// Splitting isometry: F -> F_A F_B (J_down, E_P) or E -> E_A E_B
  /// (J_down_star).
  std::optional<Isometry> isometry;
  /// Purification the witness acts on (purifier labeled "F").
  std::optional<PureState> purification;
  /// State the objective is evaluated on, when it fits in kMaxTotalDim.
  std::optional<MultipartiteState> witness_state;
  Tripartition witness_parts;
};

/// Merges the three groups into factors A, B, E (in that order).
MultipartiteState canonical(const MultipartiteState& s, const Tripartition& t = abe());

/*******************************************************************************
 * EVALUATORS AT A WITNESS
 ******************************************************************************/

/// I(A:B|E) after `t` acts on E.
double i_down_at(const MultipartiteState& s, const Channel& t,
                 const Tripartition& parts = abe());

/// I(A:B|f) for an extension `ext` of s (labels of the canonical form plus
/// `f`). Throws ConsistencyError if Tr_f ext differs from s by more than 1e-9.
double i_down_star_at(const MultipartiteState& s, const MultipartiteState& ext,
                      const std::string& f, const Tripartition& parts = abe());

/// I(A:B|r) for an extension of the AB marginal on labels A, B, r.
double i_sq_at(const MultipartiteState& s, const MultipartiteState& ext,
               const std::string& r, const Tripartition& parts = abe());

/**
 * I(A F_A : B F_B | E) after `t` on E, where `phi` is a purification of s on
 * A, B, E, fa, fb. The purification may list its factors in any order.
 */
double j_down_at(const MultipartiteState& s, const PureState& phi, const std::string& fa,
                 const std::string& fb, const Channel& t, const Tripartition& parts = abe());

/**
 * I(A E_A : B E_B | f) where `w` splits E into E_A (x) E_B (E_A leading) and
 * `ext` is an extension of s on A, B, E, f.
 */
double j_down_star_at(const MultipartiteState& s, const Isometry& w, int ea_dim,
                      const MultipartiteState& ext, const std::string& f,
                      const Tripartition& parts = abe());

/// S(A E_A) for a purification of the two-factor state rho_ab on its labels
/// plus ea and eb.
double e_p_at(const MultipartiteState& rho_ab, const PureState& phi, const std::string& ea);

/// D(rho || R(rho_AE)) for a recovery channel R: E -> BE (B leading).
double d_rec_at(const MultipartiteState& s, const Channel& r,
                const Tripartition& parts = abe());

/*******************************************************************************
 * MINIMIZERS
 ******************************************************************************/

double i_m(const MultipartiteState& s, const Tripartition& parts = abe());
MonotoneEstimate i_down(const MultipartiteState& s, const OptimizerConfig& cfg,
                        const Tripartition& parts = abe());
MonotoneEstimate i_down_star(const MultipartiteState& s, const OptimizerConfig& cfg,
                             const Tripartition& parts = abe());
MonotoneEstimate i_sq(const MultipartiteState& s, const OptimizerConfig& cfg,
                      const Tripartition& parts = abe());
MonotoneEstimate j_down(const MultipartiteState& s, const OptimizerConfig& cfg,
                        const Tripartition& parts = abe());
MonotoneEstimate j_down_star(const MultipartiteState& s, const OptimizerConfig& cfg,
                             const Tripartition& parts = abe());
/// Entanglement of purification of a two-factor state (first factor is A).
MonotoneEstimate e_p(const MultipartiteState& rho_ab, const OptimizerConfig& cfg);
MonotoneEstimate d_rec(const MultipartiteState& s, const OptimizerConfig& cfg,
                       const Tripartition& parts = abe());

MonotoneEstimate estimate(Monotone m, const MultipartiteState& s, const OptimizerConfig& cfg,
                          const Tripartition& parts = abe());

/// Recomputes the objective from the witness_state of an estimate. For E_P the
/// state is rho_{A E_A}; for D_rec it is the recovered state.
double reevaluate(Monotone m, const MultipartiteState& s, const MonotoneEstimate& e,
                  const Tripartition& parts = abe());

struct MonotoneReport {
  MarkovVerdict markov;
  double i_m = 0.0;
  MonotoneEstimate i_down;
  MonotoneEstimate i_down_star;
  MonotoneEstimate i_sq;
  MonotoneEstimate j_down;
  MonotoneEstimate j_down_star;
  MonotoneEstimate d_rec;
};

MonotoneReport analyze(const MultipartiteState& s, const OptimizerConfig& cfg,
                       const Tripartition& parts = abe(), double tol_markov = kMarkovTol);

}  // namespace qmarkov
