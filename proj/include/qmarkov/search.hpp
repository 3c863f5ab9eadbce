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
#include <functional>
#include <optional>
#include <vector>

#include "qmarkov/channel.hpp"

namespace qmarkov {

/**
 * Gradient-free multi-restart minimizer over products of isometry manifolds.
 *
 * Each restart runs a (1+1) evolution strategy: perturb every block with
 * complex Gaussian noise of scale `step`, retract, keep the candidate if it
 * improves the objective. The step grows by 1.3 on success and shrinks by
 * 1.3^(-1/4) on failure, so it settles where about one in five moves succeeds.
 */

enum class BlockKind {
  kStiefel,       ///< W^dag W = I, retracted by the polar factor
  kColumnSphere,  ///< each column has unit norm
};

struct Block {
  BlockKind kind = BlockKind::kStiefel;
  int rows = 1;
  int cols = 1;
};

using Point = std::vector<ComplexMatrix>;
using Objective = std::function<double(const Point&)>;

struct SearchConfig {
  int restarts = 16;
  int max_iters = 2000;
  double initial_step = 0.3;
  double step_tolerance = 1e-6;
  /// A restart that reaches this value stops the search for later restarts.
  double floor = 1e-12;
  /// After every restart has used max_iters, the best `polish_keep`
  /// unconverged restarts continue for `polish_iters` more iterations.
  int polish_keep = 0;
  int polish_iters = 0;
  std::uint64_t seed = 1;
  int threads = 1;
};

struct SearchResult {
  Point best;
  double value = 0.0;
  int restart = 0;      ///< index of the winning restart
  int iterations = 0;   ///< summed over the restarts that decided the result
  int evaluations = 0;
  bool converged = false;
};

/// Nearest isometry W (W^dag W)^{-1/2}.
ComplexMatrix polar_retract(const ComplexMatrix& w);
ComplexMatrix retract(const ComplexMatrix& w, BlockKind kind);

Point random_point(const std::vector<Block>& blocks, Rng& rng);

/**
 * Restart 0 starts from `anchor` when given, the others from Haar-random
 * points. The result is the lowest-index restart reaching the floor if any,
 * otherwise the minimum by (value, restart index); both are independent of
 * thread scheduling.
 */
SearchResult minimize(const std::vector<Block>& blocks, const Objective& f,
                      const SearchConfig& cfg, const std::optional<Point>& anchor = {});

/// Per-restart seed derived from the base seed.
std::uint64_t restart_seed(std::uint64_t seed, int restart);

}  // namespace qmarkov
