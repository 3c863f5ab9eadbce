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

#include <limits>

#include "qmarkov/tensor.hpp"

namespace qmarkov {

// All entropies are in bits. A relative entropy with a support violation is
// reported as +infinity.

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
/// Support threshold for relative entropy.
inline constexpr double kSupportTol = 1e-10;

/// Conditioning groups for a tripartite quantity I(a : b | e). Each group may
/// hold several labels; `e` may be empty.
struct Tripartition {
  Labels a;
  Labels b;
  Labels e;
};

/// The default split {A}, {B}, {E}.
Tripartition abe();

/// -sum p log2 p over eigenvalues clipped at kEigenClip.
double entropy_of_spectrum(const RealVector& values);
double von_neumann(const ComplexMatrix& rho);
double von_neumann(const MultipartiteState& s);
/// Entropy of the reduced state on `labels` (empty set gives 0).
double subsystem_entropy(const MultipartiteState& s, const Labels& labels);
/// Same for a pure state, using the smaller side of the Schmidt split.
double subsystem_entropy(const PureState& psi, const Labels& labels);

double cqmi(const MultipartiteState& s, const std::string& a, const std::string& b,
            const std::string& e);
double cqmi(const MultipartiteState& s, const Tripartition& t);
double cqmi(const PureState& psi, const Tripartition& t);

double mutual_info(const MultipartiteState& s, const std::string& a, const std::string& b);
double mutual_info(const MultipartiteState& s, const Labels& a, const Labels& b);

/// D(a || b) = Tr a (log a - log b); +infinity when supp a is not inside supp b.
double relative_entropy(const ComplexMatrix& a, const ComplexMatrix& b);
double relative_entropy(const MultipartiteState& a, const MultipartiteState& b);

/// Binary entropy h(p).
double binary_entropy(double p);

}  // namespace qmarkov
