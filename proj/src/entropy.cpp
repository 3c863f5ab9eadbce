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

#include "qmarkov/entropy.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <set>

namespace qmarkov {

Tripartition abe() { return {{"A"}, {"B"}, {"E"}}; }

double entropy_of_spectrum(const RealVector& values) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double p = std::min(values(i), 1.0);
    if (p > kEigenClip) h -= p * std::log2(p);
  }
  return h;
}

double von_neumann(const ComplexMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho, Eigen::EigenvaluesOnly);
  return entropy_of_spectrum(es.eigenvalues());
}

double von_neumann(const MultipartiteState& s) { return von_neumann(s.matrix()); }

double subsystem_entropy(const MultipartiteState& s, const Labels& labels) {
  if (labels.empty()) return 0.0;
  if (labels.size() == s.dims().size()) {
    for (const auto& l : labels) index_of(s.dims(), l);
    return von_neumann(s);
  }
  return von_neumann(partial_trace(s, labels));
}

double subsystem_entropy(const PureState& psi, const Labels& labels) {
  if (labels.empty() || labels.size() == psi.dims().size()) {
    for (const auto& l : labels) index_of(psi.dims(), l);
    return 0.0;
  }
  const ComplexMatrix m = reshape_bipartite(psi, labels);
  ComplexMatrix gram;
  if (m.rows() <= m.cols()) {
    gram.noalias() = m * m.adjoint();
  } else {
    gram.noalias() = m.adjoint() * m;
  }
  return von_neumann(gram);
}

namespace {

Labels join(std::initializer_list<const Labels*> groups) {
  Labels out;
  for (const Labels* g : groups) out.insert(out.end(), g->begin(), g->end());
  return out;
}

void check_disjoint(const Tripartition& t) {
  std::set<std::string> seen;
  for (const Labels* g : {&t.a, &t.b, &t.e}) {
    for (const auto& l : *g) {
      if (!seen.insert(l).second) throw LabelError("label '" + l + "' appears twice");
    }
  }
  if (t.a.empty() || t.b.empty()) throw LabelError("cqmi needs nonempty a and b groups");
}

template <typename State>
double cqmi_impl(const State& s, const Tripartition& t) {
  check_disjoint(t);
  return subsystem_entropy(s, join({&t.a, &t.e})) + subsystem_entropy(s, join({&t.b, &t.e})) -
         subsystem_entropy(s, join({&t.a, &t.b, &t.e})) - subsystem_entropy(s, t.e);
}

}  // namespace

double cqmi(const MultipartiteState& s, const std::string& a, const std::string& b,
            const std::string& e) {
  return cqmi(s, Tripartition{{a}, {b}, {e}});
}

double cqmi(const MultipartiteState& s, const Tripartition& t) { return cqmi_impl(s, t); }
double cqmi(const PureState& psi, const Tripartition& t) { return cqmi_impl(psi, t); }

double mutual_info(const MultipartiteState& s, const std::string& a, const std::string& b) {
  return mutual_info(s, Labels{a}, Labels{b});
}

double mutual_info(const MultipartiteState& s, const Labels& a, const Labels& b) {
  return cqmi(s, Tripartition{a, b, {}});
}

double relative_entropy(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("relative entropy needs matching dims");
  }
  const EigenDecomposition ea = hermitian_eig(hermitize(a));
  const EigenDecomposition eb = hermitian_eig(hermitize(b));
  const Eigen::Index n = eb.values.size();
  // Weight of a outside the support of b.
  double leak = 0.0;
  RealVector log_b = RealVector::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (eb.values(k) > kSupportTol) {
      log_b(k) = std::log2(eb.values(k));
    } else {
      leak += (eb.vectors.col(k).adjoint() * a * eb.vectors.col(k))(0, 0).real();
    }
  }
  if (leak > kSupportTol) return kInfinity;
  double cross = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (eb.values(k) <= kSupportTol) continue;
    const double w = (eb.vectors.col(k).adjoint() * a * eb.vectors.col(k))(0, 0).real();
    cross += w * log_b(k);
  }
  return -entropy_of_spectrum(ea.values) - cross;
}

double relative_entropy(const MultipartiteState& a, const MultipartiteState& b) {
  if (a.dims() != b.dims()) throw ShapeError("relative entropy needs matching dims");
  return relative_entropy(a.matrix(), b.matrix());
}

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw InputError("binary entropy needs p in [0, 1]");
  RealVector v(2);
  v << p, 1.0 - p;
  return entropy_of_spectrum(v);
}

}  // namespace qmarkov
