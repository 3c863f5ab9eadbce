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

#include "qmarkov/classical.hpp"

#include <algorithm>
#include <cmath>

#include "qmarkov/search.hpp"

namespace qmarkov {

namespace {

constexpr double kProbTol = 1e-12;

std::vector<double> marginal_xz(const ClassicalDist& p) {
  std::vector<double> out(p.nx() * p.nz(), 0.0);
  for (int x = 0; x < p.nx(); ++x)
    for (int y = 0; y < p.ny(); ++y)
      for (int z = 0; z < p.nz(); ++z) out[x * p.nz() + z] += p(x, y, z);
  return out;
}

std::vector<double> marginal_yz(const ClassicalDist& p) {
  std::vector<double> out(p.ny() * p.nz(), 0.0);
  for (int x = 0; x < p.nx(); ++x)
    for (int y = 0; y < p.ny(); ++y)
      for (int z = 0; z < p.nz(); ++z) out[y * p.nz() + z] += p(x, y, z);
  return out;
}

std::vector<double> marginal_z(const ClassicalDist& p) {
  std::vector<double> out(p.nz(), 0.0);
  for (int x = 0; x < p.nx(); ++x)
    for (int y = 0; y < p.ny(); ++y)
      for (int z = 0; z < p.nz(); ++z) out[z] += p(x, y, z);
  return out;
}

/// CMI of the table q(x, y, z') = sum_z r(z'|z) p(x, y, z) without building a
/// validated ClassicalDist (the search evaluates this many times).
double cmi_after(const ClassicalDist& p, const std::vector<double>& r, int out) {
  const int nx = p.nx(), ny = p.ny(), nz = p.nz();
  std::vector<double> q(nx * ny * out, 0.0);
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      for (int z = 0; z < nz; ++z) {
        const double v = p(x, y, z);
        if (v == 0.0) continue;
        for (int o = 0; o < out; ++o) q[(x * ny + y) * out + o] += r[o * nz + z] * v;
      }
  std::vector<double> xz(nx * out, 0.0), yz(ny * out, 0.0), zz(out, 0.0);
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      for (int o = 0; o < out; ++o) {
        const double v = q[(x * ny + y) * out + o];
        xz[x * out + o] += v;
        yz[y * out + o] += v;
        zz[o] += v;
      }
  return std::max(0.0, shannon_entropy(xz) + shannon_entropy(yz) - shannon_entropy(q) -
                           shannon_entropy(zz));
}

}  // namespace

ClassicalDist::ClassicalDist(int nx, int ny, int nz, std::vector<double> p)
    : nx_(nx), ny_(ny), nz_(nz), p_(std::move(p)) {
  if (nx < 1 || ny < 1 || nz < 1) throw ShapeError("alphabet sizes must be positive");
  if (static_cast<int>(p_.size()) != nx * ny * nz) {
    throw ShapeError("probability table size does not match the alphabets");
  }
  double total = 0.0;
  for (double v : p_) {
    if (!(v >= 0.0)) throw InvariantError("probabilities must be nonnegative");
    total += v;
  }
  if (std::abs(total - 1.0) > kProbTol) throw InvariantError("probabilities must sum to 1");
}

StochasticMap::StochasticMap(int in, int out, std::vector<double> r)
    : in_(in), out_(out), r_(std::move(r)) {
  if (in < 1 || out < 1) throw ShapeError("alphabet sizes must be positive");
  if (static_cast<int>(r_.size()) != in * out) throw ShapeError("map table has the wrong size");
  for (int i = 0; i < in; ++i) {
    double col = 0.0;
    for (int o = 0; o < out; ++o) {
      if (!(r_[o * in + i] >= 0.0)) throw InvariantError("map entries must be nonnegative");
      col += r_[o * in + i];
    }
    if (std::abs(col - 1.0) > kProbTol) throw InvariantError("map columns must sum to 1");
  }
}

StochasticMap StochasticMap::identity(int n) {
  std::vector<double> r(n * n, 0.0);
  for (int i = 0; i < n; ++i) r[i * n + i] = 1.0;
  return StochasticMap(n, n, std::move(r));
}

StochasticMap StochasticMap::constant(int in, int out) {
  std::vector<double> r(in * out, 0.0);
  for (int i = 0; i < in; ++i) r[i] = 1.0;
  return StochasticMap(in, out, std::move(r));
}

StochasticMap compose(const StochasticMap& second, const StochasticMap& first) {
  if (second.in_size() != first.out_size()) throw ShapeError("maps do not compose");
  const int in = first.in_size(), mid = first.out_size(), out = second.out_size();
  std::vector<double> r(in * out, 0.0);
  for (int o = 0; o < out; ++o)
    for (int m = 0; m < mid; ++m)
      for (int i = 0; i < in; ++i) r[o * in + i] += second(o, m) * first(m, i);
  // Renormalize columns against rounding before validation.
  for (int i = 0; i < in; ++i) {
    double col = 0.0;
    for (int o = 0; o < out; ++o) col += r[o * in + i];
    for (int o = 0; o < out; ++o) r[o * in + i] /= col;
  }
  return StochasticMap(in, out, std::move(r));
}

bool is_reversible(const StochasticMap& forward, const StochasticMap& inverse) {
  if (inverse.in_size() != forward.out_size() || inverse.out_size() != forward.in_size()) {
    return false;
  }
  const StochasticMap c = compose(inverse, forward);
  for (int o = 0; o < c.out_size(); ++o)
    for (int i = 0; i < c.in_size(); ++i) {
      if (std::abs(c(o, i) - (o == i ? 1.0 : 0.0)) > kProbTol) return false;
    }
  return true;
}

ClassicalDist apply_x(const StochasticMap& m, const ClassicalDist& p) {
  if (m.in_size() != p.nx()) throw ShapeError("map input does not match |X|");
  std::vector<double> q(m.out_size() * p.ny() * p.nz(), 0.0);
  for (int o = 0; o < m.out_size(); ++o)
    for (int x = 0; x < p.nx(); ++x)
      for (int y = 0; y < p.ny(); ++y)
        for (int z = 0; z < p.nz(); ++z) q[(o * p.ny() + y) * p.nz() + z] += m(o, x) * p(x, y, z);
  return ClassicalDist(m.out_size(), p.ny(), p.nz(), std::move(q));
}

ClassicalDist apply_y(const StochasticMap& m, const ClassicalDist& p) {
  if (m.in_size() != p.ny()) throw ShapeError("map input does not match |Y|");
  std::vector<double> q(p.nx() * m.out_size() * p.nz(), 0.0);
  for (int x = 0; x < p.nx(); ++x)
    for (int o = 0; o < m.out_size(); ++o)
      for (int y = 0; y < p.ny(); ++y)
        for (int z = 0; z < p.nz(); ++z)
          q[(x * m.out_size() + o) * p.nz() + z] += m(o, y) * p(x, y, z);
  return ClassicalDist(p.nx(), m.out_size(), p.nz(), std::move(q));
}

ClassicalDist apply_z(const StochasticMap& m, const ClassicalDist& p) {
  if (m.in_size() != p.nz()) throw ShapeError("map input does not match |Z|");
  const int out = m.out_size();
  std::vector<double> q(p.nx() * p.ny() * out, 0.0);
  for (int x = 0; x < p.nx(); ++x)
    for (int y = 0; y < p.ny(); ++y)
      for (int z = 0; z < p.nz(); ++z)
        for (int o = 0; o < out; ++o) q[(x * p.ny() + y) * out + o] += m(o, z) * p(x, y, z);
  return ClassicalDist(p.nx(), p.ny(), out, std::move(q));
}

ClassicalDist classical_p1() {
  std::vector<double> p(8, 0.0);
  p[(0 * 2 + 0) * 2 + 0] = 0.5;
  p[(1 * 2 + 1) * 2 + 0] = 0.5;
  return ClassicalDist(2, 2, 2, std::move(p));
}

ClassicalDist classical_p2() {
  std::vector<double> p(8, 0.0);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) p[(x * 2 + y) * 2 + (x ^ y)] = 0.25;
  return ClassicalDist(2, 2, 2, std::move(p));
}

ClassicalDist classical_max_nonmarkovian(int d) {
  if (d < 1) throw InputError("d must be positive");
  std::vector<double> p(d * d, 0.0);
  for (int x = 0; x < d; ++x) p[x * d + x] = 1.0 / d;
  return ClassicalDist(d, d, 1, std::move(p));
}

double shannon_entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

double classical_cmi(const ClassicalDist& p) {
  const double v = shannon_entropy(marginal_xz(p)) + shannon_entropy(marginal_yz(p)) -
                   shannon_entropy(p.table()) - shannon_entropy(marginal_z(p));
  return std::max(0.0, v);
}

bool classical_is_markov(const ClassicalDist& p, double tol) { return classical_cmi(p) <= tol; }

double classical_intrinsic_at(const ClassicalDist& p, const StochasticMap& t) {
  return classical_cmi(apply_z(t, p));
}

IntrinsicResult classical_intrinsic(const ClassicalDist& p, const ClassicalConfig& cfg) {
  const int nz = p.nz();
  const int out = cfg.out_alphabet.value_or(nz);
  if (out < 1) throw InputError("output alphabet must be positive");

  auto to_table = [&](const ComplexMatrix& m) {
    std::vector<double> r(out * nz);
    for (int i = 0; i < nz; ++i) {
      double col = 0.0;
      for (int o = 0; o < out; ++o) col += std::norm(m(o, i));
      for (int o = 0; o < out; ++o) r[o * nz + i] = std::norm(m(o, i)) / col;
    }
    return r;
  };

  SearchConfig sc;
  sc.restarts = cfg.restarts;
  sc.max_iters = cfg.max_iters;
  sc.seed = cfg.seed;
  sc.threads = cfg.threads;
  sc.floor = 1e-12;
  const Objective f = [&](const Point& pt) { return cmi_after(p, to_table(pt[0]), out); };

  // Identity (or its truncation) as the anchor.
  ComplexMatrix anchor = ComplexMatrix::Zero(out, nz);
  for (int i = 0; i < nz; ++i) anchor(std::min(i, out - 1), i) = 1.0;
  const SearchResult r = minimize({{BlockKind::kColumnSphere, out, nz}}, f, sc, Point{anchor});

  StochasticMap witness(nz, out, to_table(r.best[0]));
  const double value = classical_intrinsic_at(p, witness);
  return {value, std::move(witness), r.converged, r.restart, r.evaluations};
}

ClassicalGeneration classical_generate(const ClassicalDist& target, int d) {
  if (target.nx() != d || target.ny() != d) {
    throw InputError("target alphabets of X and Y must have size d");
  }
  const int nz = target.nz();
  const ClassicalDist start = classical_max_nonmarkovian(d);
  ClassicalGeneration g{{}, target, 0.0, 0.0};

  // Joint table over (k, x, y, z, m): the shared key k comes from P_{I,d}
  // (Alice's and Bob's copies agree), and Alice samples (x, y, z) from the
  // target independently of k.
  g.trace.push_back("Alice samples (X, Y, Z) from the target");
  g.trace.push_back("Alice computes M = Y + K mod d");
  g.trace.push_back("Alice broadcasts Z and M to Bob and Eve");
  g.trace.push_back("Bob computes Y = M - K mod d");
  g.trace.push_back("Bob discards Z; Alice keeps only X; both forget K");

  // Final table over (x, y_bob, z, m); Eve holds (z, m), the start's Z is a
  // single letter.
  std::vector<double> out(d * d * nz * d, 0.0);
  for (int k = 0; k < d; ++k) {
    const double pk = start(k, k, 0);
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y)
        for (int z = 0; z < nz; ++z) {
          const double v = pk * target(x, y, z);
          if (v == 0.0) continue;
          const int m = (y + k) % d;
          const int y_bob = ((m - k) % d + d) % d;
          out[(x * d + y_bob) * (nz * d) + z * d + m] += v;
        }
  }
  g.final_dist = ClassicalDist(d, d, nz * d, out);

  std::vector<double> pm(d, 0.0);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < nz; ++z)
        for (int m = 0; m < d; ++m) pm[m] += out[(x * d + y) * (nz * d) + z * d + m];
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < nz; ++z) {
        double pxyz = 0.0;
        for (int m = 0; m < d; ++m) pxyz += out[(x * d + y) * (nz * d) + z * d + m];
        for (int m = 0; m < d; ++m) {
          const double v = out[(x * d + y) * (nz * d) + z * d + m];
          g.residual = std::max(g.residual, std::abs(v - target(x, y, z) / d));
          g.m_dependence = std::max(g.m_dependence, std::abs(v - pxyz * pm[m]));
        }
      }
  return g;
}

}  // namespace qmarkov
