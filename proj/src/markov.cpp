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

#include "qmarkov/markov.hpp"

#include <algorithm>
#include <cmath>

namespace qmarkov {

namespace {

/// Reduced state on `labels`, with factors in the listed order.
ComplexMatrix reduced_matrix(const MultipartiteState& s, const Labels& labels) {
  if (labels.empty()) return ComplexMatrix::Identity(1, 1);
  return permute_systems(partial_trace(s, labels), labels).matrix();
}

Dims dims_for(const MultipartiteState& s, const Labels& labels) {
  Dims out;
  for (const auto& l : labels) out.push_back({l, s.dim_of(l)});
  return out;
}

}  // namespace

Channel petz_recovery(const MultipartiteState& s, const Tripartition& t) {
  Labels be = t.b;
  be.insert(be.end(), t.e.begin(), t.e.end());
  const ComplexMatrix rho_e = reduced_matrix(s, t.e);
  const ComplexMatrix rho_be = reduced_matrix(s, be);
  const int d_e = static_cast<int>(rho_e.rows());
  const int d_b = static_cast<int>(rho_be.rows()) / d_e;
  if (rho_e.trace().real() <= kRankTol) throw DegenerateInputError("zero E marginal");

  const EigenDecomposition eig_e = hermitian_eig(rho_e);
  RealVector inv_sqrt = RealVector::Zero(d_e);
  std::vector<int> null_space;
  for (int k = 0; k < d_e; ++k) {
    if (eig_e.values(k) > kRankTol) {
      inv_sqrt(k) = 1.0 / std::sqrt(eig_e.values(k));
    } else {
      null_space.push_back(k);
    }
  }
  const ComplexMatrix rho_e_inv_sqrt =
      eig_e.vectors * inv_sqrt.asDiagonal() * eig_e.vectors.adjoint();
  const ComplexMatrix rho_be_sqrt =
      hermitian_apply(rho_be, [](double x) { return std::sqrt(std::max(x, 0.0)); });

  std::vector<ComplexMatrix> kraus;
  for (int i = 0; i < d_b; ++i) {
    const ComplexMatrix ket = basis_ket(d_b, i);
    kraus.push_back(rho_be_sqrt * kron(ket, rho_e_inv_sqrt));
  }
  if (!null_space.empty()) {
    const EigenDecomposition eig_be = hermitian_eig(rho_be);
    for (int k = 0; k < eig_be.values.size(); ++k) {
      if (eig_be.values(k) <= 1e-14) continue;
      for (int j : null_space) {
        kraus.push_back(std::sqrt(eig_be.values(k)) * eig_be.vectors.col(k) *
                        eig_e.vectors.col(j).adjoint());
      }
    }
  }
  // Project out round-off so the completeness check sees an exact isometry.
  ComplexMatrix v(d_b * d_e * static_cast<int>(kraus.size()), d_e);
  for (std::size_t k = 0; k < kraus.size(); ++k) {
    v.block(k * d_b * d_e, 0, d_b * d_e, d_e) = kraus[k];
  }
  const ComplexMatrix gram = v.adjoint() * v;
  const ComplexMatrix fix =
      hermitian_apply(gram, [](double x) { return x > 0.0 ? 1.0 / std::sqrt(x) : 0.0; });
  for (auto& k : kraus) k = k * fix;
  return Channel(std::move(kraus));
}

MultipartiteState recover(const MultipartiteState& s, const Channel& r,
                          const Tripartition& t) {
  Labels keep;
  for (const auto& l : s.labels()) {
    if (std::find(t.b.begin(), t.b.end(), l) == t.b.end()) keep.push_back(l);
  }
  const MultipartiteState rho_ae = partial_trace(s, keep);
  Dims outputs = dims_for(s, t.b);
  const Dims e_dims = dims_for(s, t.e);
  outputs.insert(outputs.end(), e_dims.begin(), e_dims.end());
  const MultipartiteState out = apply(r, rho_ae, t.e, outputs);
  return permute_systems(out, s.labels());
}

MarkovVerdict is_markov(const MultipartiteState& s, const Tripartition& t, double tol) {
  MarkovVerdict v;
  v.cqmi_value = cqmi(s, t);
  v.petz_residual = trace_norm_distance(recover(s, petz_recovery(s, t), t), s);
  v.is_markov = v.cqmi_value <= tol && v.petz_residual <= tol;
  return v;
}

namespace {

void check_terms(const MultipartiteState& rho_ab, const std::vector<SeparableTerm>& terms) {
  if (rho_ab.dims().size() != 2) throw ShapeError("separable input must have two factors");
  if (terms.empty()) throw ConsistencyError("empty decomposition");
  const int da = rho_ab.dims()[0].dim;
  const int db = rho_ab.dims()[1].dim;
  ComplexMatrix sum = ComplexMatrix::Zero(da * db, da * db);
  for (const auto& term : terms) {
    if (term.weight < 0.0) throw ConsistencyError("negative weight");
    if (term.a.rows() != da || term.a.cols() != da || term.b.rows() != db ||
        term.b.cols() != db) {
      throw ConsistencyError("decomposition term has wrong dimensions");
    }
    // Validates each term as a state.
    MultipartiteState({{"a", da}}, term.a);
    MultipartiteState({{"b", db}}, term.b);
    sum += term.weight * kron(term.a, term.b);
  }
  if (trace_norm(sum - rho_ab.matrix()) > 1e-10) {
    throw ConsistencyError("decomposition does not reproduce the state");
  }
}

/// Purification of `sigma` padded to a purifier of dimension sigma.rows().
ComplexVector padded_purification(const ComplexMatrix& sigma) {
  const EigenDecomposition eig = hermitian_eig(sigma);
  const int d = static_cast<int>(sigma.rows());
  ComplexVector psi = ComplexVector::Zero(d * d);
  for (int k = 0; k < d; ++k) {
    const double lam = std::max(eig.values(k), 0.0);
    for (int i = 0; i < d; ++i) psi(i * d + k) = std::sqrt(lam) * eig.vectors(i, k);
  }
  return psi / psi.norm();
}

}  // namespace

MultipartiteState markov_extension_from_separable(const MultipartiteState& rho_ab,
                                                  const std::vector<SeparableTerm>& terms,
                                                  const std::string& e_label) {
  check_terms(rho_ab, terms);
  const int n = static_cast<int>(terms.size());
  const int d = rho_ab.dim();
  ComplexMatrix m = ComplexMatrix::Zero(d * n, d * n);
  for (int j = 0; j < n; ++j) {
    m += terms[j].weight * kron(kron(terms[j].a, terms[j].b), basis_projector(n, j));
  }
  Dims dims = rho_ab.dims();
  dims.push_back({e_label, n});
  return MultipartiteState(std::move(dims), hermitize(m));
}

DephasedPurification dephase_purifier_to_markov(const MultipartiteState& rho_ab,
                                                const std::vector<SeparableTerm>& terms,
                                                const std::string& e_label) {
  check_terms(rho_ab, terms);
  const int n = static_cast<int>(terms.size());
  const int da = rho_ab.dims()[0].dim;
  const int db = rho_ab.dims()[1].dim;
  const int de = n * da * db;
  ComplexVector psi = ComplexVector::Zero(da * db * de);
  for (int j = 0; j < n; ++j) {
    const ComplexVector pa = padded_purification(terms[j].a);  // (a, fa)
    const ComplexVector pb = padded_purification(terms[j].b);  // (b, fb)
    const double w = std::sqrt(terms[j].weight);
    for (int a = 0; a < da; ++a) {
      for (int fa = 0; fa < da; ++fa) {
        for (int b = 0; b < db; ++b) {
          for (int fb = 0; fb < db; ++fb) {
            const int e = (j * da + fa) * db + fb;
            psi((a * db + b) * de + e) += w * pa(a * da + fa) * pb(b * db + fb);
          }
        }
      }
    }
  }
  Dims dims = rho_ab.dims();
  dims.push_back({e_label, de});
  std::vector<ComplexMatrix> kraus;
  for (int j = 0; j < n; ++j) {
    kraus.push_back(kron(basis_projector(n, j), ComplexMatrix::Identity(da * db, da * db)));
  }
  return {PureState(std::move(dims), psi / psi.norm()), Channel(std::move(kraus))};
}

}  // namespace qmarkov
