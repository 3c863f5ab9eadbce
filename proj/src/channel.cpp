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

#include "qmarkov/channel.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace qmarkov {

Channel::Channel(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw ShapeError("channel needs at least one Kraus operator");
  const auto rows = kraus_.front().rows();
  const auto cols = kraus_.front().cols();
  if (rows < 1 || cols < 1) throw ShapeError("empty Kraus operator");
  ComplexMatrix sum = ComplexMatrix::Zero(cols, cols);
  for (const auto& k : kraus_) {
    if (k.rows() != rows || k.cols() != cols) {
      throw ShapeError("Kraus operators have inconsistent shapes");
    }
    sum += k.adjoint() * k;
  }
  const double err = (sum - ComplexMatrix::Identity(cols, cols)).cwiseAbs().maxCoeff();
  if (err > 1e-10) throw InvariantError("Kraus operators are not trace preserving");
}

ComplexMatrix Channel::operator()(const ComplexMatrix& x) const {
  if (x.rows() != in_dim() || x.cols() != in_dim()) {
    throw ShapeError("operator size does not match channel input");
  }
  ComplexMatrix out = ComplexMatrix::Zero(out_dim(), out_dim());
  for (const auto& k : kraus_) out += k * x * k.adjoint();
  return out;
}

Isometry::Isometry(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() < matrix_.cols() || matrix_.cols() < 1) {
    throw ShapeError("isometry must have out_dim >= in_dim >= 1");
  }
  const auto n = matrix_.cols();
  const double err =
      (matrix_.adjoint() * matrix_ - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (err > 1e-10) throw InvariantError("matrix is not an isometry");
}

Channel Isometry::channel() const { return Channel({matrix_}); }

// ---------------------------------------------------------------------------

MultipartiteState apply(const Channel& c, const MultipartiteState& s,
                        const std::string& target) {
  return apply(c, s, Labels{target}, Dims{{target, c.out_dim()}});
}

MultipartiteState apply(const Channel& c, const MultipartiteState& s,
                        const Labels& inputs, const Dims& outputs) {
  const Dims& dims = s.dims();
  std::vector<int> in_idx;
  for (const auto& l : inputs) in_idx.push_back(index_of(dims, l));
  {
    std::vector<int> sorted = in_idx;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw LabelError("channel inputs repeat a label");
    }
  }
  int d_in = 1;
  for (int i : in_idx) d_in *= dims[i].dim;
  if (d_in != c.in_dim()) throw ShapeError("channel input dimension mismatch");
  const int d_out = total_dim(outputs);
  if (d_out != c.out_dim()) throw ShapeError("channel output dimension mismatch");

  const int first = in_idx.empty() ? static_cast<int>(dims.size())
                                   : *std::min_element(in_idx.begin(), in_idx.end());
  std::vector<int> order;
  Dims others;
  int before = 0;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
    if (std::find(in_idx.begin(), in_idx.end(), i) == in_idx.end()) {
      order.push_back(i);
      others.push_back(dims[i]);
      if (i < first) ++before;
    }
  }
  if (others.empty() && outputs.empty()) throw ShapeError("channel would discard every factor");
  for (const auto& o : outputs) {
    if (has_label(others, o.label)) throw LabelError("output label '" + o.label + "' in use");
  }
  order.insert(order.end(), in_idx.begin(), in_idx.end());

  const std::vector<int> p = permutation_indices(dims, order);
  const int total = s.dim();
  ComplexMatrix rho(total, total);
  for (int i = 0; i < total; ++i) {
    for (int j = 0; j < total; ++j) rho(i, j) = s.matrix()(p[i], p[j]);
  }
  const int d_o = total_dim(others);
  const ComplexMatrix eye = ComplexMatrix::Identity(d_o, d_o);
  ComplexMatrix out = ComplexMatrix::Zero(d_o * d_out, d_o * d_out);
  for (const auto& k : c.kraus()) {
    const ComplexMatrix m = kron(eye, k);
    out.noalias() += m * rho * m.adjoint();
  }
  Dims mid_dims = others;
  mid_dims.insert(mid_dims.end(), outputs.begin(), outputs.end());
  MultipartiteState mid(mid_dims, hermitize(out));
  if (outputs.empty() || before == static_cast<int>(others.size())) return mid;
  Labels final_order;
  for (int i = 0; i < before; ++i) final_order.push_back(others[i].label);
  for (const auto& o : outputs) final_order.push_back(o.label);
  for (int i = before; i < static_cast<int>(others.size()); ++i) {
    final_order.push_back(others[i].label);
  }
  return permute_systems(mid, final_order);
}

Channel compose(const Channel& second, const Channel& first) {
  if (second.in_dim() != first.out_dim()) throw ShapeError("channels do not compose");
  std::vector<ComplexMatrix> kraus;
  for (const auto& b : second.kraus()) {
    for (const auto& a : first.kraus()) kraus.push_back(b * a);
  }
  return Channel(std::move(kraus));
}

Channel tensor(const Channel& a, const Channel& b) {
  std::vector<ComplexMatrix> kraus;
  for (const auto& x : a.kraus()) {
    for (const auto& y : b.kraus()) kraus.push_back(kron(x, y));
  }
  return Channel(std::move(kraus));
}

// ---------------------------------------------------------------------------

ComplexMatrix choi(const Channel& c) {
  const int n = c.in_dim();
  const int m = c.out_dim();
  ComplexMatrix j = ComplexMatrix::Zero(n * m, n * m);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(a, b) = 1.0;
      j.block(a * m, b * m, m, m) = c(e);
    }
  }
  return j;
}

double choi_distance(const Channel& a, const Channel& b) {
  if (a.in_dim() != b.in_dim() || a.out_dim() != b.out_dim()) {
    throw ShapeError("channels have different shapes");
  }
  return trace_norm(choi(a) - choi(b)) / a.in_dim();
}

Dilation stinespring(const Channel& c, const std::string& env_label) {
  const int r = static_cast<int>(c.kraus().size());
  const int m = c.out_dim();
  ComplexMatrix v(m * r, c.in_dim());
  for (int k = 0; k < r; ++k) {
    const ComplexMatrix& kk = c.kraus()[k];
    for (int j = 0; j < m; ++j) v.row(j * r + k) = kk.row(j);
  }
  return {Isometry(std::move(v)), env_label, r};
}

Channel trace_environment(const ComplexMatrix& v, int out_dim) {
  if (out_dim < 1 || v.rows() % out_dim != 0) throw ShapeError("bad output dimension");
  const int r = static_cast<int>(v.rows()) / out_dim;
  std::vector<ComplexMatrix> kraus;
  for (int k = 0; k < r; ++k) {
    ComplexMatrix kk(out_dim, v.cols());
    for (int j = 0; j < out_dim; ++j) kk.row(j) = v.row(j * r + k);
    if (kk.cwiseAbs().maxCoeff() > 0.0) kraus.push_back(std::move(kk));
  }
  return Channel(std::move(kraus));
}

Channel minimal_kraus(const Channel& c) {
  const int n = c.in_dim();
  const int m = c.out_dim();
  const EigenDecomposition eig = hermitian_eig(hermitize(choi(c)));
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index k = eig.values.size() - 1; k >= 0; --k) {
    if (eig.values(k) <= 1e-13) continue;
    ComplexMatrix kk(m, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) kk(j, i) = std::sqrt(eig.values(k)) * eig.vectors(i * m + j, k);
    }
    kraus.push_back(std::move(kk));
  }
  // Re-orthonormalize against round-off.
  ComplexMatrix v(m * static_cast<int>(kraus.size()), n);
  for (std::size_t k = 0; k < kraus.size(); ++k) v.block(k * m, 0, m, n) = kraus[k];
  const ComplexMatrix fix = hermitian_apply(
      hermitize(v.adjoint() * v), [](double x) { return x > 0.0 ? 1.0 / std::sqrt(x) : 0.0; });
  for (auto& k : kraus) k = k * fix;
  return Channel(std::move(kraus));
}

ReversibilityReport verify_reversible(const ReversiblePair& pair, std::uint64_t seed) {
  const Channel& fwd = pair.forward;
  const Channel& inv = pair.inverse;
  if (inv.in_dim() != fwd.out_dim() || inv.out_dim() != fwd.in_dim()) {
    throw ShapeError("reversible pair dimensions do not compose");
  }
  const int d = fwd.in_dim();
  ReversibilityReport rep;
  rep.choi_residual = choi_distance(compose(inv, fwd), identity_channel(d));
  if (rep.choi_residual > kChannelTol) return rep;

  // W dilates the inverse; W o forward must act as tau -> tau (x) sigma0.
  const Dilation w = stinespring(inv);
  const int r = w.env_dim;
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : fwd.kraus()) kraus.push_back(w.v.matrix() * k);
  const Channel wf(std::move(kraus));

  // sigma0 is the env marginal of the normalized Choi state, i.e.
  // Tr_sys wf(I/d).
  const ComplexMatrix mixed = wf(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
  ComplexMatrix sigma0 = ComplexMatrix::Zero(r, r);
  for (int s = 0; s < d; ++s) sigma0 += mixed.block(s * r, s * r, r, r);
  sigma0 = hermitize(sigma0);
  rep.sigma0 = MultipartiteState({{"env", r}}, sigma0);

  Rng rng(seed);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix tau = random_state({{"t", d}}, rng).matrix();
    const double res = trace_norm(wf(tau) - kron(tau, sigma0));
    rep.max_tau_residual = std::max(rep.max_tau_residual, res);
  }
  rep.ok = rep.max_tau_residual <= 1e-8;
  return rep;
}

// ---------------------------------------------------------------------------

ComplexMatrix gaussian_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  }
  return g;
}

ComplexMatrix random_isometry_matrix(int in_dim, int out_dim, Rng& rng) {
  if (in_dim < 1 || out_dim < in_dim) throw ShapeError("random isometry needs out_dim >= in_dim");
  const ComplexMatrix g = gaussian_matrix(out_dim, in_dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(out_dim, in_dim);
  const ComplexMatrix r = qr.matrixQR();
  for (int i = 0; i < in_dim; ++i) {
    const Complex diag = r(i, i);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(i) *= diag / mag;
  }
  return q;
}

Isometry random_isometry(int in_dim, int out_dim, std::uint64_t seed) {
  Rng rng(seed);
  return Isometry(random_isometry_matrix(in_dim, out_dim, rng));
}

ComplexMatrix random_unitary(int d, Rng& rng) { return random_isometry_matrix(d, d, rng); }

MultipartiteState random_state(const Dims& dims, Rng& rng, int rank) {
  const int d = total_dim(dims);
  if (rank <= 0) rank = d;
  const ComplexMatrix g = gaussian_matrix(d, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return MultipartiteState(dims, hermitize(rho));
}

Channel random_channel(int in_dim, int out_dim, int kraus_count, Rng& rng) {
  const ComplexMatrix v = random_isometry_matrix(in_dim, out_dim * kraus_count, rng);
  return trace_environment(v, out_dim);
}

// ---------------------------------------------------------------------------

Channel identity_channel(int d) { return Channel({ComplexMatrix::Identity(d, d)}); }

Channel unitary_channel(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw ShapeError("unitary must be square");
  return Isometry(u).channel();
}

Channel dephasing(int d) { return dephasing_in_basis(ComplexMatrix::Identity(d, d)); }

Channel dephasing_in_basis(const ComplexMatrix& basis) {
  const Isometry check(basis);
  if (basis.rows() != basis.cols()) throw ShapeError("basis must be square");
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index i = 0; i < basis.cols(); ++i) {
    kraus.push_back(basis.col(i) * basis.col(i).adjoint());
  }
  return Channel(std::move(kraus));
}

Channel depolarizing(int d) { return replacement(maximally_mixed(d), d); }

Channel replacement(const ComplexMatrix& sigma, int in_dim) {
  const EigenDecomposition eig = hermitian_eig(sigma);
  const int m = static_cast<int>(sigma.rows());
  std::vector<ComplexMatrix> kraus;
  for (int k = 0; k < m; ++k) {
    const double lam = eig.values(k);
    if (lam <= 1e-14) continue;
    for (int j = 0; j < in_dim; ++j) {
      ComplexMatrix kk = ComplexMatrix::Zero(m, in_dim);
      kk.col(j) = std::sqrt(lam) * eig.vectors.col(k);
      kraus.push_back(std::move(kk));
    }
  }
  return Channel(std::move(kraus));
}

Channel preparation(const ComplexMatrix& sigma) { return replacement(sigma, 1); }

Channel discard(int d) {
  std::vector<ComplexMatrix> kraus;
  for (int j = 0; j < d; ++j) {
    ComplexMatrix kk = ComplexMatrix::Zero(1, d);
    kk(0, j) = 1.0;
    kraus.push_back(std::move(kk));
  }
  return Channel(std::move(kraus));
}

Channel append_state(int d, const ComplexMatrix& sigma) {
  const EigenDecomposition eig = hermitian_eig(sigma);
  std::vector<ComplexMatrix> kraus;
  const ComplexMatrix eye = ComplexMatrix::Identity(d, d);
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) <= 1e-14) continue;
    const ComplexMatrix col = std::sqrt(eig.values(k)) * eig.vectors.col(k);
    kraus.push_back(kron(eye, col));
  }
  return Channel(std::move(kraus));
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

ComplexMatrix hadamard() {
  ComplexMatrix m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

ComplexMatrix shift(int d) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) m((j + 1) % d, j) = 1.0;
  return m;
}

ComplexMatrix clock(int d) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    m(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * j / d);
  }
  return m;
}

ComplexMatrix controlled(int control_dim, const ComplexMatrix& u) {
  const auto n = u.rows();
  ComplexMatrix out = ComplexMatrix::Zero(control_dim * n, control_dim * n);
  ComplexMatrix power = ComplexMatrix::Identity(n, n);
  for (int j = 0; j < control_dim; ++j) {
    out.block(j * n, j * n, n, n) = power;
    power = power * u;
  }
  return out;
}

}  // namespace qmarkov
