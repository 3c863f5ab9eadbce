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
#include <string>
#include <vector>

#include "qmarkov/catalog.hpp"
#include "qmarkov/classical.hpp"
#include "qmarkov/monotones.hpp"

namespace qmarkov {

/**
 * Acceptance bundles. Each returns one record per check with the measured
 * value, the reference and the tolerance used.
 */

struct SuiteCheck {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<SuiteCheck> checks;

  bool passed() const;
  int failures() const;
  void add(std::string name, double measured, double expected, double tolerance,
           std::string detail = {});
  /// Records a check whose outcome is a plain flag.
  void add_flag(std::string name, bool ok, double measured = 0.0, std::string detail = {});
};

/// The six monotone columns evaluated at closed-form witnesses (the infima are
/// attained there, so these are the exact values up to rounding).
MonotoneRow witness_row(const std::string& name);

struct SuiteOptions {
  OptimizerConfig optimizer;  ///< used by the optimizer-based checks
  ClassicalConfig classical;
  std::uint64_t seed = 1;     ///< property-test seed
  int trials = 100;           ///< random trials for the monotonicity suite
};

/// Options pinned by the acceptance criteria (64 restarts, default caps).
SuiteOptions acceptance_options();

SuiteReport suite_table1(const SuiteOptions& opt);
SuiteReport suite_fig3();
SuiteReport suite_pauli();
SuiteReport suite_monotonicity(const SuiteOptions& opt);
SuiteReport suite_duality(const SuiteOptions& opt);
SuiteReport suite_markov();
SuiteReport suite_classical(const SuiteOptions& opt);
SuiteReport suite_dilution(const SuiteOptions& opt);
SuiteReport suite_drec(const SuiteOptions& opt);

/// Every bundle for the names accepted by the CLI: table1, fig3, pauli,
/// classical, properties (monotonicity, duality, markov, dilution, drec).
std::vector<SuiteReport> run_suite(const std::string& name, const SuiteOptions& opt);

/// Brute-force minimum of I(X:Y|Z') over 2x2 stochastic maps on a grid of the
/// given step (|Z| = |Z'| = 2).
double classical_grid_minimum(const ClassicalDist& p, double step = 0.02);

}  // namespace qmarkov
