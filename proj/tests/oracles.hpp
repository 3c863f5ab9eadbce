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

// Reference implementations used only by the tests. They share no code with
// the library kernels: partial traces are explicit index loops and entropies
// come straight from Eigen's self-adjoint solver.

#include <Eigen/Eigenvalues>
#include <cmath>
#include <vector>

#include "qmarkov/tensor.hpp"

namespace qmarkov::oracle {

/// Digits of a flat index in the mixed radix `dims` (first factor most
/// significant).
inline std::vector<int> digits(int index, const std::vector<int>& dims) {
  std::vector<int> out(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    out[k] = index % dims[k];
    index /= dims[k];
  }
  return out;
}

/// Keeps the factors whose mask entry is true, in their original order.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, const std::vector<int>& dims,
                                   const std::vector<bool>& keep) {
  std::vector<int> kept;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (keep[k]) kept.push_back(dims[k]);
  }
  int dk = 1;
  for (int d : kept) dk *= d;
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  const int n = static_cast<int>(rho.rows());
  auto kept_index = [&](const std::vector<int>& dig) {
    int idx = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (keep[k]) idx = idx * dims[k] + dig[k];
    }
    return idx;
  };
  for (int i = 0; i < n; ++i) {
    const auto di = digits(i, dims);
    for (int j = 0; j < n; ++j) {
      const auto dj = digits(j, dims);
      bool traced_equal = true;
      for (std::size_t k = 0; k < dims.size() && traced_equal; ++k) {
        if (!keep[k] && di[k] != dj[k]) traced_equal = false;
      }
      if (traced_equal) out(kept_index(di), kept_index(dj)) += rho(i, j);
    }
  }
  return out;
}

inline double entropy(const ComplexMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 1e-14) s -= l * std::log2(l);
  }
  return s;
}

/// I(a:b|e) where a, b, e are masks over the factors.
inline double cqmi(const ComplexMatrix& rho, const std::vector<int>& dims,
                   const std::vector<bool>& a, const std::vector<bool>& b,
                   const std::vector<bool>& e) {
  auto join = [](const std::vector<bool>& x, const std::vector<bool>& y) {
    std::vector<bool> out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = x[k] || y[k];
    return out;
  };
  auto s = [&](const std::vector<bool>& m) { return entropy(partial_trace(rho, dims, m)); };
  return s(join(a, e)) + s(join(b, e)) - s(join(join(a, b), e)) - s(e);
}

/// Mask over the factors of `s` selecting `labels`.
inline std::vector<bool> mask(const MultipartiteState& s, const Labels& labels) {
  std::vector<bool> out(s.dims().size(), false);
  for (std::size_t k = 0; k < s.dims().size(); ++k) {
    for (const auto& l : labels) {
      if (s.dims()[k].label == l) out[k] = true;
    }
  }
  return out;
}

inline std::vector<int> dim_list(const MultipartiteState& s) {
  std::vector<int> out;
  for (const auto& d : s.dims()) out.push_back(d.dim);
  return out;
}

inline double cqmi(const MultipartiteState& s, const Labels& a, const Labels& b, const Labels& e) {
  return cqmi(s.matrix(), dim_list(s), mask(s, a), mask(s, b), mask(s, e));
}

inline double trace_distance(const ComplexMatrix& x, const ComplexMatrix& y) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(x - y);
  return es.eigenvalues().cwiseAbs().sum();
}

}  // namespace qmarkov::oracle
