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

#include "qmarkov/tensor.hpp"

namespace qmarkov {

/**
 * Classical counterpart: joint distributions of X (Alice), Y (Bob) and Z (Eve)
 * over finite alphabets.
 */

class ClassicalDist {
 public:
  /// Flat table indexed x * ny * nz + y * nz + z. Throws InvariantError on
  /// negative entries or a total differing from 1 by more than 1e-12.
  ClassicalDist(int nx, int ny, int nz, std::vector<double> p);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nz() const { return nz_; }
  const std::vector<double>& table() const { return p_; }
  double operator()(int x, int y, int z) const { return p_[(x * ny_ + y) * nz_ + z]; }

 private:
  int nx_, ny_, nz_;
  std::vector<double> p_;
};

/// Conditional table r(out | in) stored as r[o * in + i].
class StochasticMap {
 public:
  /// Throws InvariantError unless every column sums to 1 within 1e-12.
  StochasticMap(int in, int out, std::vector<double> r);

  int in_size() const { return in_; }
  int out_size() const { return out_; }
  double operator()(int o, int i) const { return r_[o * in_ + i]; }
  const std::vector<double>& table() const { return r_; }

  static StochasticMap identity(int n);
  /// Every input goes to output 0.
  static StochasticMap constant(int in, int out);

 private:
  int in_, out_;
  std::vector<double> r_;
};

/// second o first.
StochasticMap compose(const StochasticMap& second, const StochasticMap& first);
/// Whether inverse o forward is the identity within 1e-12.
bool is_reversible(const StochasticMap& forward, const StochasticMap& inverse);

ClassicalDist apply_x(const StochasticMap& m, const ClassicalDist& p);
ClassicalDist apply_y(const StochasticMap& m, const ClassicalDist& p);
ClassicalDist apply_z(const StochasticMap& m, const ClassicalDist& p);

/// p_I(x,y,z) = delta_xy delta_z0 / 2 and p_II(x,y,z) = delta_{x+y=z} / 4.
ClassicalDist classical_p1();
ClassicalDist classical_p2();
/// delta_xy / d with a single-letter Z.
ClassicalDist classical_max_nonmarkovian(int d);

/// Shannon entropy in bits with 0 log 0 = 0.
double shannon_entropy(const std::vector<double>& p);

/// I(X:Y|Z) in bits.
double classical_cmi(const ClassicalDist& p);
bool classical_is_markov(const ClassicalDist& p, double tol = 1e-8);

struct ClassicalConfig {
  int restarts = 16;
  int max_iters = 1500;
  std::uint64_t seed = 1;
  /// Output alphabet of the map on Z; unset means |Z|.
  std::optional<int> out_alphabet;
  int threads = 1;
};

struct IntrinsicResult {
  double value = 0.0;
  StochasticMap witness;
  bool converged = true;
  int restart = 0;
  int evaluations = 0;
};

/// I(X:Y|Z') after `t` acts on Z.
double classical_intrinsic_at(const ClassicalDist& p, const StochasticMap& t);

/// Upper bound on inf_T I(X:Y|T(Z)) with its witness map. Maps are searched as
/// squared moduli of unit columns; restart 0 starts at the identity.
IntrinsicResult classical_intrinsic(const ClassicalDist& p, const ClassicalConfig& cfg = {});

struct ClassicalGeneration {
  std::vector<std::string> trace;  ///< one line per protocol step
  /// Final distribution with Eve's variable Z' = (z, m) indexed z * d + m.
  ClassicalDist final_dist;
  double residual = 0.0;           ///< max |final - target (x) uniform M|
  double m_dependence = 0.0;       ///< max |p(x,y,z,m) - p(x,y,z) p(m)|
};

/**
 * One-time-pad generation from P_{I,d}: Alice samples (X, Y, Z) from the
 * target, broadcasts Z and M = Y + K, Bob recovers Y = M - K and discards Z.
 * Simulated on exact probability tables.
 */
ClassicalGeneration classical_generate(const ClassicalDist& target, int d);

}  // namespace qmarkov
