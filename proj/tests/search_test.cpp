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

#include "qmarkov/channel.hpp"
#include "qmarkov/search.hpp"

namespace qmarkov {
namespace {

TEST(Retract, LandsOnManifold) {
  Rng rng(3);
  const ComplexMatrix w = retract(gaussian_matrix(5, 2, rng), BlockKind::kStiefel);
  EXPECT_TRUE((w.adjoint() * w).isIdentity(1e-12));
  const ComplexMatrix c = retract(gaussian_matrix(4, 3, rng), BlockKind::kColumnSphere);
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(c.col(j).norm(), 1.0, 1e-12);
}

/// Overlap with a fixed target vector: the optimum is -1.
Objective overlap_with(const ComplexVector& target) {
  return [target](const Point& p) { return -std::abs(target.dot(p[0].col(0))); };
}

TEST(Minimize, FindsUnitOverlap) {
  Rng rng(5);
  const ComplexVector target = random_isometry_matrix(1, 6, rng).col(0);
  SearchConfig cfg;
  cfg.restarts = 4;
  cfg.floor = -1.0 + 1e-9;
  const SearchResult r = minimize({{BlockKind::kStiefel, 6, 1}}, overlap_with(target), cfg);
  EXPECT_NEAR(r.value, -1.0, 1e-6);
}

TEST(Minimize, AnchorIsRestartZero) {
  const ComplexVector target = ComplexVector::Unit(3, 0);
  SearchConfig cfg;
  cfg.restarts = 3;
  cfg.floor = -1.0;
  const Point anchor = {ComplexMatrix(target)};
  const SearchResult r = minimize({{BlockKind::kStiefel, 3, 1}}, overlap_with(target), cfg, anchor);
  EXPECT_EQ(r.restart, 0);
  EXPECT_EQ(r.evaluations, 1);
}

TEST(Minimize, DeterministicAcrossThreadCounts) {
  Rng rng(8);
  const ComplexVector target = random_isometry_matrix(1, 4, rng).col(0);
  SearchConfig cfg;
  cfg.restarts = 6;
  cfg.max_iters = 200;
  cfg.polish_keep = 2;
  cfg.polish_iters = 300;
  cfg.floor = -2.0;
  const SearchResult one = minimize({{BlockKind::kStiefel, 4, 1}}, overlap_with(target), cfg);
  cfg.threads = 3;
  const SearchResult three = minimize({{BlockKind::kStiefel, 4, 1}}, overlap_with(target), cfg);
  EXPECT_EQ(one.value, three.value);
  EXPECT_EQ(one.restart, three.restart);
  EXPECT_EQ(one.evaluations, three.evaluations);
  EXPECT_EQ(one.best[0], three.best[0]);
}

TEST(Minimize, PolishOnlyImproves) {
  Rng rng(10);
  const ComplexVector target = random_isometry_matrix(1, 8, rng).col(0);
  SearchConfig cfg;
  cfg.restarts = 4;
  cfg.max_iters = 20;
  cfg.floor = -2.0;
  const SearchResult plain = minimize({{BlockKind::kStiefel, 8, 1}}, overlap_with(target), cfg);
  cfg.polish_keep = 1;
  cfg.polish_iters = 2000;
  const SearchResult polished = minimize({{BlockKind::kStiefel, 8, 1}}, overlap_with(target), cfg);
  EXPECT_LE(polished.value, plain.value);
  EXPECT_NEAR(polished.value, -1.0, 1e-6);
}

TEST(Minimize, RejectsBadConfig) {
  SearchConfig cfg;
  cfg.restarts = 0;
  EXPECT_THROW(minimize({{BlockKind::kStiefel, 2, 1}}, overlap_with(ComplexVector::Unit(2, 0)), cfg),
               InputError);
}

TEST(RestartSeed, DistinctPerRestart) {
  EXPECT_NE(restart_seed(1, 0), restart_seed(1, 1));
  EXPECT_NE(restart_seed(1, 0), restart_seed(2, 0));
  EXPECT_EQ(restart_seed(5, 3), restart_seed(5, 3));
}

}  // namespace
}  // namespace qmarkov
