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

#include "qmarkov/tensor.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <set>

namespace qmarkov {

int total_dim(const Dims& dims) {
  long long d = 1;
  for (const auto& s : dims) {
    d *= s.dim;
    if (d > (1 << 24)) throw ShapeError("total dimension overflow");
  }
  return static_cast<int>(d);
}

int index_of(const Dims& dims, const std::string& label) {
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i].label == label) return static_cast<int>(i);
  }
  throw LabelError("unknown subsystem label '" + label + "'");
}

bool has_label(const Dims& dims, const std::string& label) {
  return std::any_of(dims.begin(), dims.end(),
                     [&](const Subsystem& s) { return s.label == label; });
}

void check_dims(const Dims& dims) {
  std::set<std::string> seen;
  for (const auto& s : dims) {
    if (s.label.empty()) throw LabelError("empty subsystem label");
    if (!seen.insert(s.label).second) {
      throw LabelError("duplicate subsystem label '" + s.label + "'");
    }
    if (s.dim < 1) throw ShapeError("subsystem '" + s.label + "' has dimension < 1");
  }
}

Labels labels_of(const Dims& dims) {
  Labels out;
  out.reserve(dims.size());
  for (const auto& s : dims) out.push_back(s.label);
  return out;
}

// ---------------------------------------------------------------------------

MultipartiteState::MultipartiteState(Dims dims, ComplexMatrix matrix)
    : dims_(std::move(dims)), matrix_(std::move(matrix)) {
  check_dims(dims_);
  const int d = total_dim(dims_);
  if (d > kMaxTotalDim) {
    throw ShapeError("state dimension " + std::to_string(d) + " exceeds " +
                     std::to_string(kMaxTotalDim));
  }
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw ShapeError("density matrix is " + std::to_string(matrix_.rows()) + "x" +
                     std::to_string(matrix_.cols()) + " but dims multiply to " +
                     std::to_string(d));
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex(1.0)) > kTraceTol) {
    throw InvariantError("density matrix trace is not 1");
  }
  const double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTol) throw InvariantError("density matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(matrix_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPositivityTol) {
    throw InvariantError("density matrix is not positive semidefinite");
  }
}

int MultipartiteState::dim_of(const std::string& label) const {
  return dims_[index_of(dims_, label)].dim;
}

bool MultipartiteState::is_pure(double tol) const {
  const double purity = (matrix_ * matrix_).trace().real();
  return std::abs(purity - 1.0) <= tol;
}

PureState::PureState(Dims dims, ComplexVector amplitudes)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
  check_dims(dims_);
  if (amplitudes_.size() != total_dim(dims_)) {
    throw ShapeError("state vector length does not match dims");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > kTraceTol) {
    throw InvariantError("state vector is not normalized");
  }
}

MultipartiteState PureState::density() const {
  return MultipartiteState(dims_, amplitudes_ * amplitudes_.adjoint());
}

// ---------------------------------------------------------------------------

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

MultipartiteState tensor(const MultipartiteState& a, const MultipartiteState& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return MultipartiteState(std::move(dims), kron(a.matrix(), b.matrix()));
}

PureState tensor(const PureState& a, const PureState& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return PureState(std::move(dims), kron(a.amplitudes(), b.amplitudes()));
}

EigenDecomposition hermitian_eig(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("hermitian_eig needs a square matrix");
  if (m.size() > 0) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
      throw ShapeError("hermitian_eig input is not Hermitian");
    }
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  if (es.info() != Eigen::Success) throw ShapeError("eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

ComplexMatrix hermitize(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

ComplexVector basis_ket(int d, int i) {
  ComplexVector v = ComplexVector::Zero(d);
  v(i) = 1.0;
  return v;
}

ComplexMatrix basis_projector(int d, int i) {
  ComplexMatrix p = ComplexMatrix::Zero(d, d);
  p(i, i) = 1.0;
  return p;
}

ComplexMatrix maximally_mixed(int d) {
  return ComplexMatrix::Identity(d, d) / static_cast<double>(d);
}

// ---------------------------------------------------------------------------

std::vector<int> permutation_indices(const Dims& dims, const std::vector<int>& order) {
  const int n = static_cast<int>(dims.size());
  if (static_cast<int>(order.size()) != n) throw LabelError("order is not a permutation");
  std::vector<long long> stride(n, 1);
  for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1].dim;
  const int total = total_dim(dims);
  std::vector<int> out(total);
  std::vector<int> counter(n, 0);
  long long old_index = 0;
  for (int j = 0; j < total; ++j) {
    out[j] = static_cast<int>(old_index);
    // Increment the multi-index over the reordered factors.
    for (int i = n - 1; i >= 0; --i) {
      const int f = order[i];
      if (++counter[i] < dims[f].dim) {
        old_index += stride[f];
        break;
      }
      old_index -= stride[f] * (dims[f].dim - 1);
      counter[i] = 0;
    }
  }
  return out;
}

namespace {

std::vector<int> positions(const Dims& dims, const Labels& labels) {
  std::vector<int> out;
  out.reserve(labels.size());
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) throw LabelError("label '" + l + "' repeated");
    out.push_back(index_of(dims, l));
  }
  return out;
}

Dims reorder(const Dims& dims, const std::vector<int>& order) {
  Dims out;
  out.reserve(order.size());
  for (int i : order) out.push_back(dims[i]);
  return out;
}

ComplexMatrix permute_matrix(const ComplexMatrix& m, const std::vector<int>& p) {
  const int d = static_cast<int>(p.size());
  ComplexMatrix out(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) out(i, j) = m(p[i], p[j]);
  }
  return out;
}

// Traces the trailing `dt`-dimensional factor of a (dk*dt)-square matrix.
ComplexMatrix trace_trailing(const ComplexMatrix& m, int dk, int dt) {
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (int i = 0; i < dk; ++i) {
    for (int j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (int t = 0; t < dt; ++t) acc += m(i * dt + t, j * dt + t);
      out(i, j) = acc;
    }
  }
  return out;
}

}  // namespace

MultipartiteState partial_trace(const MultipartiteState& s, const Labels& keep) {
  if (keep.empty()) throw LabelError("partial_trace needs at least one kept label");
  std::vector<int> kept = positions(s.dims(), keep);
  std::sort(kept.begin(), kept.end());
  std::vector<int> order = kept;
  for (int i = 0; i < static_cast<int>(s.dims().size()); ++i) {
    if (!std::binary_search(kept.begin(), kept.end(), i)) order.push_back(i);
  }
  const Dims kept_dims = reorder(s.dims(), kept);
  const int dk = total_dim(kept_dims);
  const int dt = s.dim() / dk;
  const ComplexMatrix permuted =
      permute_matrix(s.matrix(), permutation_indices(s.dims(), order));
  return MultipartiteState(kept_dims, hermitize(trace_trailing(permuted, dk, dt)));
}

MultipartiteState trace_out(const MultipartiteState& s, const Labels& drop) {
  const std::vector<int> dropped = positions(s.dims(), drop);
  Labels keep;
  for (int i = 0; i < static_cast<int>(s.dims().size()); ++i) {
    if (std::find(dropped.begin(), dropped.end(), i) == dropped.end()) {
      keep.push_back(s.dims()[i].label);
    }
  }
  if (keep.empty()) {
    // Trace of everything: a one-dimensional state with a placeholder factor.
    return MultipartiteState({{"_", 1}}, ComplexMatrix::Identity(1, 1));
  }
  return partial_trace(s, keep);
}

MultipartiteState permute_systems(const MultipartiteState& s, const Labels& order) {
  if (order.size() != s.dims().size()) throw LabelError("order is not a permutation");
  const std::vector<int> idx = positions(s.dims(), order);
  return MultipartiteState(reorder(s.dims(), idx),
                           permute_matrix(s.matrix(), permutation_indices(s.dims(), idx)));
}

PureState permute_systems(const PureState& s, const Labels& order) {
  if (order.size() != s.dims().size()) throw LabelError("order is not a permutation");
  const std::vector<int> idx = positions(s.dims(), order);
  const std::vector<int> p = permutation_indices(s.dims(), idx);
  ComplexVector v(s.dim());
  for (int j = 0; j < s.dim(); ++j) v(j) = s.amplitudes()(p[j]);
  return PureState(reorder(s.dims(), idx), std::move(v));
}

namespace {

Dims rename(Dims dims, const std::vector<std::pair<std::string, std::string>>& mapping) {
  for (const auto& [from, to] : mapping) dims[index_of(dims, from)].label = to;
  check_dims(dims);
  return dims;
}

}  // namespace

MultipartiteState relabel(const MultipartiteState& s,
                          const std::vector<std::pair<std::string, std::string>>& mapping) {
  return MultipartiteState(rename(s.dims(), mapping), s.matrix());
}

PureState relabel(const PureState& s,
                  const std::vector<std::pair<std::string, std::string>>& mapping) {
  return PureState(rename(s.dims(), mapping), s.amplitudes());
}

double trace_norm(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitize(hermitian),
                                                  Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double trace_norm_distance(const MultipartiteState& a, const MultipartiteState& b) {
  if (a.dims() != b.dims()) throw ShapeError("trace distance needs matching dims");
  return trace_norm(a.matrix() - b.matrix());
}

PureState purify(const MultipartiteState& s, const std::string& new_label) {
  if (has_label(s.dims(), new_label)) throw LabelError("purifier label already in use");
  const EigenDecomposition eig = hermitian_eig(s.matrix());
  std::vector<int> support;
  for (Eigen::Index k = eig.values.size() - 1; k >= 0; --k) {
    if (eig.values(k) > kRankTol) support.push_back(static_cast<int>(k));
  }
  const int rank = static_cast<int>(support.size());
  const int d = s.dim();
  ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(d) * rank);
  double norm2 = 0.0;
  for (int k : support) norm2 += eig.values(k);
  for (int r = 0; r < rank; ++r) {
    const int k = support[r];
    const double w = std::sqrt(eig.values(k) / norm2);
    for (int i = 0; i < d; ++i) psi(i * rank + r) = w * eig.vectors(i, k);
  }
  Dims dims = s.dims();
  dims.push_back({new_label, rank});
  return PureState(std::move(dims), std::move(psi));
}

PureState apply_isometry(const PureState& psi, const Labels& targets,
                         const ComplexMatrix& w, const Dims& outputs) {
  const int d_out = total_dim(outputs);
  if (w.rows() != d_out) throw ShapeError("isometry rows do not match output dims");
  if (targets.empty()) {
    if (w.cols() != 1) throw ShapeError("preparation must be a column vector");
    Dims dims = psi.dims();
    dims.insert(dims.end(), outputs.begin(), outputs.end());
    return PureState(std::move(dims), kron(psi.amplitudes(), ComplexVector(w.col(0))));
  }
  const std::vector<int> t_idx = positions(psi.dims(), targets);
  const int first = *std::min_element(t_idx.begin(), t_idx.end());
  std::vector<int> order;
  int before = 0;
  for (int i = 0; i < static_cast<int>(psi.dims().size()); ++i) {
    if (std::find(t_idx.begin(), t_idx.end(), i) == t_idx.end()) {
      order.push_back(i);
      if (i < first) ++before;
    }
  }
  const Dims others = reorder(psi.dims(), order);
  order.insert(order.end(), t_idx.begin(), t_idx.end());
  const int d_o = total_dim(others);
  const int d_t = psi.dim() / d_o;
  if (w.cols() != d_t) throw ShapeError("isometry columns do not match target dims");

  const std::vector<int> p = permutation_indices(psi.dims(), order);
  ComplexMatrix m(d_o, d_t);
  for (int i = 0; i < d_o; ++i) {
    for (int j = 0; j < d_t; ++j) m(i, j) = psi.amplitudes()(p[i * d_t + j]);
  }
  const ComplexMatrix out = m * w.transpose();
  ComplexVector v(static_cast<Eigen::Index>(d_o) * d_out);
  for (int i = 0; i < d_o; ++i) {
    for (int j = 0; j < d_out; ++j) v(i * d_out + j) = out(i, j);
  }
  Dims dims = others;
  dims.insert(dims.end(), outputs.begin(), outputs.end());
  PureState mid(dims, std::move(v));
  if (before == static_cast<int>(others.size())) return mid;
  Labels final_order;
  for (int i = 0; i < before; ++i) final_order.push_back(others[i].label);
  for (const auto& o : outputs) final_order.push_back(o.label);
  for (int i = before; i < static_cast<int>(others.size()); ++i) {
    final_order.push_back(others[i].label);
  }
  return permute_systems(mid, final_order);
}

ComplexMatrix reshape_bipartite(const PureState& psi, const Labels& rows) {
  std::vector<int> order = positions(psi.dims(), rows);
  const Dims row_dims = reorder(psi.dims(), order);
  for (int i = 0; i < static_cast<int>(psi.dims().size()); ++i) {
    if (std::find(order.begin(), order.end(), i) == order.end()) order.push_back(i);
  }
  const int dr = total_dim(row_dims);
  const int dc = psi.dim() / dr;
  const std::vector<int> p = permutation_indices(psi.dims(), order);
  ComplexMatrix m(dr, dc);
  for (int i = 0; i < dr; ++i) {
    for (int j = 0; j < dc; ++j) m(i, j) = psi.amplitudes()(p[i * dc + j]);
  }
  return m;
}

}  // namespace qmarkov
