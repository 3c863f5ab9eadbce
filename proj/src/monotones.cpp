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

#include "qmarkov/monotones.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <set>

#include "qmarkov/search.hpp"

namespace qmarkov {

std::string monotone_name(Monotone m) {
  switch (m) {
    case Monotone::kIM:
      return "I_M";
    case Monotone::kIDown:
      return "I_down";
    case Monotone::kIDownStar:
      return "I_down_star";
    case Monotone::kISq:
      return "I_sq";
    case Monotone::kJDown:
      return "J_down";
    case Monotone::kJDownStar:
      return "J_down_star";
    case Monotone::kEP:
      return "E_P";
    case Monotone::kDRec:
      return "D_rec";
  }
  return "?";
}

MultipartiteState canonical(const MultipartiteState& s, const Tripartition& t) {
  Labels order;
  for (const Labels* g : {&t.a, &t.b, &t.e}) order.insert(order.end(), g->begin(), g->end());
  {
    std::set<std::string> seen(order.begin(), order.end());
    if (seen.size() != order.size()) throw LabelError("groups overlap");
  }
  if (t.a.empty() || t.b.empty()) throw LabelError("A and B groups must be nonempty");
  const MultipartiteState kept =
      order.size() == s.dims().size() ? s : partial_trace(s, order);
  const MultipartiteState perm = permute_systems(kept, order);
  auto group_dim = [&](const Labels& g) {
    int d = 1;
    for (const auto& l : g) d *= perm.dim_of(l);
    return d;
  };
  return MultipartiteState({{"A", group_dim(t.a)}, {"B", group_dim(t.b)}, {"E", group_dim(t.e)}},
                           perm.matrix());
}

/*******************************************************************************
 * PURE-VECTOR KERNELS
 ******************************************************************************/

namespace {

using RowMap = Eigen::Map<ComplexMatrix>;
using ConstRowMap = Eigen::Map<const ComplexMatrix>;

/// Precomputed reshape of a flat vector into (subset) x (complement).
struct Cut {
  std::vector<int> perm;
  int rows = 1;
  int cols = 1;
  bool trivial = false;
};

Dims anonymous(const std::vector<int>& dims) {
  Dims out;
  for (std::size_t i = 0; i < dims.size(); ++i) out.push_back({std::to_string(i), dims[i]});
  return out;
}

Cut make_cut(const std::vector<int>& dims, const std::vector<int>& subset) {
  Cut c;
  if (subset.empty() || subset.size() == dims.size()) {
    c.trivial = true;
    return c;
  }
  std::vector<int> order = subset;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
    if (std::find(subset.begin(), subset.end(), i) == subset.end()) order.push_back(i);
  }
  c.perm = permutation_indices(anonymous(dims), order);
  for (int i : subset) c.rows *= dims[i];
  c.cols = static_cast<int>(c.perm.size()) / c.rows;
  return c;
}

double cut_entropy(const ComplexVector& v, const Cut& c) {
  if (c.trivial) return 0.0;
  ComplexMatrix m(c.rows, c.cols);
  for (int i = 0; i < c.rows; ++i) {
    for (int j = 0; j < c.cols; ++j) m(i, j) = v(c.perm[i * c.cols + j]);
  }
  ComplexMatrix gram;
  if (c.rows <= c.cols) {
    gram.noalias() = m * m.adjoint();
  } else {
    gram.noalias() = m.adjoint() * m;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram, Eigen::EigenvaluesOnly);
  return entropy_of_spectrum(es.eigenvalues());
}

struct CqmiCuts {
  Cut ae, be, abe, e;

  CqmiCuts(const std::vector<int>& dims, const std::vector<int>& a, const std::vector<int>& b,
           const std::vector<int>& e_idx) {
    auto join = [](std::vector<int> x, const std::vector<int>& y) {
      x.insert(x.end(), y.begin(), y.end());
      return x;
    };
    ae = make_cut(dims, join(a, e_idx));
    be = make_cut(dims, join(b, e_idx));
    abe = make_cut(dims, join(join(a, b), e_idx));
    e = make_cut(dims, e_idx);
  }

  double operator()(const ComplexVector& v) const {
    return cut_entropy(v, ae) + cut_entropy(v, be) - cut_entropy(v, abe) - cut_entropy(v, e);
  }
};

/// Applies `u` to the middle index of a (lead, mid, trail) row-major tensor.
ComplexVector apply_middle(const ComplexVector& v, int lead, const ComplexMatrix& u, int trail) {
  const int mid_in = static_cast<int>(u.cols());
  const int mid_out = static_cast<int>(u.rows());
  ComplexVector out(static_cast<Eigen::Index>(lead) * mid_out * trail);
  for (int l = 0; l < lead; ++l) {
    ConstRowMap in(v.data() + static_cast<Eigen::Index>(l) * mid_in * trail, mid_in, trail);
    RowMap dst(out.data() + static_cast<Eigen::Index>(l) * mid_out * trail, mid_out, trail);
    dst.noalias() = u * in;
  }
  return out;
}

/// Reduced density matrix of `keep` (in the listed order) from a labeled
/// vector, or nothing when it would exceed kMaxTotalDim.
std::optional<MultipartiteState> reduced(const ComplexVector& v, const Dims& dims,
                                         const Labels& keep) {
  int d = 1;
  Dims kept;
  for (const auto& l : keep) {
    kept.push_back(dims[index_of(dims, l)]);
    d *= kept.back().dim;
  }
  if (d > kMaxTotalDim) return std::nullopt;
  const PureState psi(dims, v / v.norm());
  const ComplexMatrix m = reshape_bipartite(psi, keep);
  return MultipartiteState(kept, hermitize(m * m.adjoint()));
}

/// |x> -> |x>|0> embedding of dimension in into out*env (zero when out < in).
std::optional<ComplexMatrix> embed_identity(int in, int out, int env) {
  if (out < in) return std::nullopt;
  ComplexMatrix v = ComplexMatrix::Zero(out * env, in);
  for (int i = 0; i < in; ++i) v(i * env, i) = 1.0;
  return v;
}

struct Rungs {
  int ext;
  int env;
};

Rungs rungs(const OptimizerConfig& cfg, int d_in) {
  const int ext_cap = cfg.extension_dim_cap.value_or(d_in * d_in);
  const int env_cap = cfg.env_dim_cap.value_or(d_in * d_in);
  if (ext_cap < 1 || env_cap < 1) throw InputError("dimension caps must be >= 1");
  return {std::min(ext_cap, cfg.extension_dim.value_or(d_in)),
          std::min(env_cap, cfg.env_dim.value_or(d_in))};
}

SearchConfig search_config(const OptimizerConfig& cfg, Monotone m, double floor = 1e-12) {
  if (cfg.restarts < 1 || cfg.max_iters < 1 || cfg.polish_keep < 0 || cfg.polish_iters < 0) {
    throw InputError("restarts and max_iters must be >= 1");
  }
  SearchConfig sc;
  sc.restarts = cfg.restarts;
  sc.max_iters = cfg.max_iters;
  sc.polish_keep = cfg.polish_keep;
  sc.polish_iters = cfg.polish_iters;
  sc.step_tolerance = cfg.step_tolerance;
  sc.seed = cfg.seed + 7919ULL * static_cast<std::uint64_t>(m);
  sc.threads = cfg.threads;
  sc.floor = floor;
  return sc;
}

void record(MonotoneEstimate& e, const SearchResult& r) {
  e.value = r.value;
  e.converged = r.converged;
  e.iterations = r.iterations;
  e.evaluations = r.evaluations;
  e.restart = r.restart;
}

/// Purification of the canonical state with factors reordered as `order`.
PureState purified(const MultipartiteState& c, const Labels& order) {
  return permute_systems(purify(c, "F"), order);
}

void check_marginal(const ComplexMatrix& got, const MultipartiteState& want, const char* what) {
  if (got.rows() != want.dim() || trace_norm(got - want.matrix()) > 1e-9) {
    throw ConsistencyError(std::string(what) + " is not consistent with the state");
  }
}

}  // namespace

/*******************************************************************************
 * EVALUATORS
 ******************************************************************************/

double i_m(const MultipartiteState& s, const Tripartition& parts) { return cqmi(s, parts); }

double i_down_at(const MultipartiteState& s, const Channel& t, const Tripartition& parts) {
  const MultipartiteState c = canonical(s, parts);
  return cqmi(apply(t, c, "E"), abe());
}

double i_down_star_at(const MultipartiteState& s, const MultipartiteState& ext,
                      const std::string& f, const Tripartition& parts) {
  const MultipartiteState c = canonical(s, parts);
  check_marginal(permute_systems(partial_trace(ext, {"A", "B", "E"}), {"A", "B", "E"}).matrix(),
                 c, "extension");
  return cqmi(ext, Tripartition{{"A"}, {"B"}, {f}});
}

double i_sq_at(const MultipartiteState& s, const MultipartiteState& ext, const std::string& r,
               const Tripartition& parts) {
  const MultipartiteState c = canonical(s, parts);
  const MultipartiteState rho_ab = partial_trace(c, {"A", "B"});
  check_marginal(permute_systems(partial_trace(ext, {"A", "B"}), {"A", "B"}).matrix(), rho_ab,
                 "extension");
  return cqmi(ext, Tripartition{{"A"}, {"B"}, {r}});
}

double j_down_at(const MultipartiteState& s, const PureState& phi, const std::string& fa,
                 const std::string& fb, const Channel& t, const Tripartition& parts) {
  const MultipartiteState c = canonical(s, parts);
  const ComplexMatrix m = reshape_bipartite(phi, {"A", "B", "E"});
  check_marginal(m * m.adjoint(), c, "purification");
  const Dilation dil = stinespring(t);
  const PureState out = apply_isometry(phi, {"E"}, dil.v.matrix(),
                                       {{"E", t.out_dim()}, {"_env", dil.env_dim}});
  return cqmi(out, Tripartition{{"A", fa}, {"B", fb}, {"E"}});
}

double j_down_star_at(const MultipartiteState& s, const Isometry& w, int ea_dim,
                      const MultipartiteState& ext, const std::string& f,
                      const Tripartition& parts) {
  const MultipartiteState c = canonical(s, parts);
  check_marginal(permute_systems(partial_trace(ext, {"A", "B", "E"}), {"A", "B", "E"}).matrix(),
                 c, "extension");
  if (ea_dim < 1 || w.out_dim() % ea_dim != 0) throw ShapeError("bad E_A dimension");
  const MultipartiteState split =
      apply(w.channel(), ext, {"E"}, {{"EA", ea_dim}, {"EB", w.out_dim() / ea_dim}});
  return cqmi(split, Tripartition{{"A", "EA"}, {"B", "EB"}, {f}});
}

double e_p_at(const MultipartiteState& rho_ab, const PureState& phi, const std::string& ea) {
  if (rho_ab.dims().size() != 2) throw ShapeError("E_P needs a two-factor state");
  const ComplexMatrix m = reshape_bipartite(phi, rho_ab.labels());
  check_marginal(m * m.adjoint(), rho_ab, "purification");
  return subsystem_entropy(phi, {rho_ab.dims()[0].label, ea});
}

double d_rec_at(const MultipartiteState& s, const Channel& r, const Tripartition& parts) {
  const MultipartiteState c = canonical(s, parts);
  return relative_entropy(c, recover(c, r, abe()));
}

/*******************************************************************************
 * MINIMIZERS
 ******************************************************************************/

MonotoneEstimate i_down(const MultipartiteState& s, const OptimizerConfig& cfg,
                        const Tripartition& parts) {
  const MultipartiteState c = canonical(s, parts);
  const PureState psi = purified(c, {"E", "A", "B", "F"});
  const int de = c.dim_of("E");
  const int rest = psi.dim() / de;
  const Rungs r = rungs(cfg, de);
  const std::vector<int> dims = {r.ext, r.env, c.dim_of("A"), c.dim_of("B"),
                                 psi.dims()[3].dim};
  const CqmiCuts cuts(dims, {2}, {3}, {0});
  const ComplexVector& base = psi.amplitudes();
  const Objective f = [&](const Point& p) { return cuts(apply_middle(base, 1, p[0], rest)); };

  std::optional<Point> anchor;
  if (auto v = embed_identity(de, r.ext, r.env)) anchor = Point{*v};
  const SearchResult res = minimize({{BlockKind::kStiefel, r.ext * r.env, de}}, f,
                                    search_config(cfg, Monotone::kIDown), anchor);
  MonotoneEstimate e;
  record(e, res);
  e.channel = trace_environment(res.best[0], r.ext);
  e.purification = psi;
  const Dims labeled = {{"E", r.ext}, {"G", r.env}, {"A", dims[2]}, {"B", dims[3]}, {"F", dims[4]}};
  e.witness_state = reduced(apply_middle(base, 1, res.best[0], rest), labeled, {"A", "B", "E"});
  e.witness_parts = abe();
  return e;
}

MonotoneEstimate i_down_star(const MultipartiteState& s, const OptimizerConfig& cfg,
                             const Tripartition& parts) {
  const MultipartiteState c = canonical(s, parts);
  const PureState psi = purified(c, {"F", "A", "B", "E"});
  const int df = psi.dims()[0].dim;
  const int rest = psi.dim() / df;
  const Rungs r = rungs(cfg, df);
  const std::vector<int> dims = {r.ext, r.env, c.dim_of("A"), c.dim_of("B"), c.dim_of("E")};
  const CqmiCuts cuts(dims, {2}, {3}, {0});
  const ComplexVector& base = psi.amplitudes();
  const Objective f = [&](const Point& p) { return cuts(apply_middle(base, 1, p[0], rest)); };

  std::optional<Point> anchor;
  if (auto v = embed_identity(df, r.ext, r.env)) anchor = Point{*v};
  const SearchResult res = minimize({{BlockKind::kStiefel, r.ext * r.env, df}}, f,
                                    search_config(cfg, Monotone::kIDownStar), anchor);
  MonotoneEstimate e;
  record(e, res);
  e.channel = trace_environment(res.best[0], r.ext);
  e.purification = psi;
  const Dims labeled = {{"F", r.ext}, {"G", r.env}, {"A", dims[2]}, {"B", dims[3]}, {"E", dims[4]}};
  e.witness_state =
      reduced(apply_middle(base, 1, res.best[0], rest), labeled, {"A", "B", "E", "F"});
  e.witness_parts = {{"A"}, {"B"}, {"F"}};
  return e;
}

MonotoneEstimate i_sq(const MultipartiteState& s, const OptimizerConfig& cfg,
                      const Tripartition& parts) {
  const MultipartiteState c = canonical(s, parts);
  const MultipartiteState rho_ab = partial_trace(c, {"A", "B"});
  const PureState psi = permute_systems(purify(rho_ab, "F"), {"F", "A", "B"});
  const int df = psi.dims()[0].dim;
  const int rest = psi.dim() / df;
  const Rungs r = rungs(cfg, df);
  const std::vector<int> dims = {r.ext, r.env, c.dim_of("A"), c.dim_of("B")};
  const CqmiCuts cuts(dims, {2}, {3}, {0});
  const ComplexVector& base = psi.amplitudes();
  const Objective f = [&](const Point& p) { return cuts(apply_middle(base, 1, p[0], rest)); };

  std::optional<Point> anchor;
  if (auto v = embed_identity(df, r.ext, r.env)) anchor = Point{*v};
  const SearchResult res = minimize({{BlockKind::kStiefel, r.ext * r.env, df}}, f,
                                    search_config(cfg, Monotone::kISq), anchor);
  MonotoneEstimate e;
  record(e, res);
  e.channel = trace_environment(res.best[0], r.ext);
  e.purification = psi;
  const Dims labeled = {{"R", r.ext}, {"G", r.env}, {"A", dims[2]}, {"B", dims[3]}};
  e.witness_state = reduced(apply_middle(base, 1, res.best[0], rest), labeled, {"A", "B", "R"});
  e.witness_parts = {{"A"}, {"B"}, {"R"}};
  return e;
}

MonotoneEstimate j_down(const MultipartiteState& s, const OptimizerConfig& cfg,
                        const Tripartition& parts) {
  const MultipartiteState c = canonical(s, parts);
  const PureState psi = purified(c, {"E", "F", "A", "B"});
  const int de = c.dim_of("E");
  const int df = psi.dims()[1].dim;
  const int da = c.dim_of("A");
  const int db = c.dim_of("B");
  const Rungs re = rungs(cfg, de);
  const Rungs rf = rungs(cfg, df);
  // The split F -> F_A F_B uses the extension rung for both halves.
  const int dfa = rf.ext;
  const int dfb = rf.ext;
  const std::vector<int> dims = {re.ext, re.env, dfa, dfb, da, db};
  const CqmiCuts cuts(dims, {4, 2}, {5, 3}, {0});
  const ComplexVector& base = psi.amplitudes();
  auto build = [&](const Point& p) {
    const ComplexVector v1 = apply_middle(base, 1, p[0], df * da * db);
    return apply_middle(v1, re.ext * re.env, p[1], da * db);
  };
  const Objective f = [&](const Point& p) { return cuts(build(p)); };

  std::optional<Point> anchor;
  auto ve = embed_identity(de, re.ext, re.env);
  auto uf = embed_identity(df, dfa, dfb);
  if (ve && uf) anchor = Point{*ve, *uf};
  const SearchResult res =
      minimize({{BlockKind::kStiefel, re.ext * re.env, de}, {BlockKind::kStiefel, dfa * dfb, df}},
               f, search_config(cfg, Monotone::kJDown), anchor);
  MonotoneEstimate e;
  record(e, res);
  e.channel = trace_environment(res.best[0], re.ext);
  e.isometry = Isometry(res.best[1]);
  e.purification = psi;
  const Dims labeled = {{"E", re.ext}, {"G", re.env}, {"FA", dfa},
                        {"FB", dfb},   {"A", da},     {"B", db}};
  e.witness_state = reduced(build(res.best), labeled, {"A", "FA", "B", "FB", "E"});
  e.witness_parts = {{"A", "FA"}, {"B", "FB"}, {"E"}};
  return e;
}

MonotoneEstimate j_down_star(const MultipartiteState& s, const OptimizerConfig& cfg,
                             const Tripartition& parts) {
  const MultipartiteState c = canonical(s, parts);
  const PureState psi = purified(c, {"E", "F", "A", "B"});
  const int de = c.dim_of("E");
  const int df = psi.dims()[1].dim;
  const int da = c.dim_of("A");
  const int db = c.dim_of("B");
  const Rungs re = rungs(cfg, de);
  const Rungs rf = rungs(cfg, df);
  const int dea = re.ext;
  const int deb = re.ext;
  const std::vector<int> dims = {dea, deb, rf.ext, rf.env, da, db};
  const CqmiCuts cuts(dims, {4, 0}, {5, 1}, {2});
  const ComplexVector& base = psi.amplitudes();
  auto build = [&](const Point& p) {
    const ComplexVector v1 = apply_middle(base, 1, p[0], df * da * db);
    return apply_middle(v1, dea * deb, p[1], da * db);
  };
  const Objective f = [&](const Point& p) { return cuts(build(p)); };

  std::optional<Point> anchor;
  auto we = embed_identity(de, dea, deb);
  auto tf = embed_identity(df, rf.ext, rf.env);
  if (we && tf) anchor = Point{*we, *tf};
  const SearchResult res = minimize(
      {{BlockKind::kStiefel, dea * deb, de}, {BlockKind::kStiefel, rf.ext * rf.env, df}}, f,
      search_config(cfg, Monotone::kJDownStar), anchor);
  MonotoneEstimate e;
  record(e, res);
  e.isometry = Isometry(res.best[0]);
  e.channel = trace_environment(res.best[1], rf.ext);
  e.purification = psi;
  const Dims labeled = {{"EA", dea}, {"EB", deb}, {"F", rf.ext},
                        {"G", rf.env}, {"A", da},  {"B", db}};
  e.witness_state = reduced(build(res.best), labeled, {"A", "EA", "B", "EB", "F"});
  e.witness_parts = {{"A", "EA"}, {"B", "EB"}, {"F"}};
  return e;
}

MonotoneEstimate e_p(const MultipartiteState& rho_ab, const OptimizerConfig& cfg) {
  if (rho_ab.dims().size() != 2) throw ShapeError("E_P needs a two-factor state");
  const MultipartiteState c(
      {{"A", rho_ab.dims()[0].dim}, {"B", rho_ab.dims()[1].dim}}, rho_ab.matrix());
  const PureState psi = permute_systems(purify(c, "F"), {"F", "A", "B"});
  const int df = psi.dims()[0].dim;
  const int rest = psi.dim() / df;
  const Rungs r = rungs(cfg, df);
  const int dea = r.ext;
  const int deb = r.ext;
  const std::vector<int> dims = {dea, deb, c.dim_of("A"), c.dim_of("B")};
  const Cut cut = make_cut(dims, {2, 0});
  const ComplexVector& base = psi.amplitudes();
  const Objective f = [&](const Point& p) {
    return cut_entropy(apply_middle(base, 1, p[0], rest), cut);
  };
  std::optional<Point> anchor;
  if (auto v = embed_identity(df, dea, deb)) anchor = Point{*v};
  const SearchResult res = minimize({{BlockKind::kStiefel, dea * deb, df}}, f,
                                    search_config(cfg, Monotone::kEP), anchor);
  MonotoneEstimate e;
  record(e, res);
  e.isometry = Isometry(res.best[0]);
  e.purification = psi;
  const Dims labeled = {{"EA", dea}, {"EB", deb}, {"A", dims[2]}, {"B", dims[3]}};
  e.witness_state = reduced(apply_middle(base, 1, res.best[0], rest), labeled, {"A", "EA"});
  e.witness_parts = {{"A"}, {"EA"}, {}};
  return e;
}

MonotoneEstimate d_rec(const MultipartiteState& s, const OptimizerConfig& cfg,
                       const Tripartition& parts) {
  const MultipartiteState c = canonical(s, parts);
  const int da = c.dim_of("A");
  const int db = c.dim_of("B");
  const int de = c.dim_of("E");
  const int dbe = db * de;
  const ComplexMatrix rho_ae = partial_trace(c, {"A", "E"}).matrix();
  const Channel petz = minimal_kraus(petz_recovery(c, abe()));
  const int petz_count = static_cast<int>(petz.kraus().size());
  const int env_cap = cfg.env_dim_cap.value_or(de * de);
  const int dg = std::min(env_cap, cfg.env_dim.value_or(std::max(petz_count, dbe)));
  if (dg < 1) throw InputError("dimension caps must be >= 1");

  const ComplexMatrix eye_a = ComplexMatrix::Identity(da, da);
  auto recovered = [&](const ComplexMatrix& v) {
    const ComplexMatrix w = kron(eye_a, v);
    const ComplexMatrix x = w * rho_ae * w.adjoint();
    const int n = da * dbe;
    ComplexMatrix sigma = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Complex acc = 0.0;
        for (int g = 0; g < dg; ++g) acc += x(i * dg + g, j * dg + g);
        sigma(i, j) = acc;
      }
    }
    return hermitize(sigma);
  };
  const ComplexMatrix& rho = c.matrix();
  const Objective f = [&](const Point& p) { return relative_entropy(rho, recovered(p[0])); };

  std::optional<Point> anchor;
  if (petz_count <= dg) {
    ComplexMatrix v = ComplexMatrix::Zero(dbe * dg, de);
    for (int k = 0; k < petz_count; ++k) {
      for (int j = 0; j < dbe; ++j) v.row(j * dg + k) = petz.kraus()[k].row(j);
    }
    anchor = Point{v};
  }
  const SearchResult res = minimize({{BlockKind::kStiefel, dbe * dg, de}}, f,
                                    search_config(cfg, Monotone::kDRec, 1e-10), anchor);
  MonotoneEstimate e;
  record(e, res);
  e.channel = trace_environment(res.best[0], dbe);
  e.witness_state = MultipartiteState(c.dims(), recovered(res.best[0]));
  e.witness_parts = abe();
  return e;
}

MonotoneEstimate estimate(Monotone m, const MultipartiteState& s, const OptimizerConfig& cfg,
                          const Tripartition& parts) {
  switch (m) {
    case Monotone::kIM: {
      MonotoneEstimate e;
      const MultipartiteState c = canonical(s, parts);
      e.value = cqmi(c, abe());
      e.witness_state = c;
      e.witness_parts = abe();
      return e;
    }
    case Monotone::kIDown:
      return i_down(s, cfg, parts);
    case Monotone::kIDownStar:
      return i_down_star(s, cfg, parts);
    case Monotone::kISq:
      return i_sq(s, cfg, parts);
    case Monotone::kJDown:
      return j_down(s, cfg, parts);
    case Monotone::kJDownStar:
      return j_down_star(s, cfg, parts);
    case Monotone::kEP: {
      const MultipartiteState c = canonical(s, parts);
      return e_p(partial_trace(c, {"A", "B"}), cfg);
    }
    case Monotone::kDRec:
      return d_rec(s, cfg, parts);
  }
  throw InputError("unknown monotone");
}

double reevaluate(Monotone m, const MultipartiteState& s, const MonotoneEstimate& e,
                  const Tripartition& parts) {
  if (!e.witness_state) throw InputError("estimate carries no witness state");
  switch (m) {
    case Monotone::kEP:
      return von_neumann(*e.witness_state);
    case Monotone::kDRec:
      return relative_entropy(canonical(s, parts), *e.witness_state);
    default:
      return cqmi(*e.witness_state, e.witness_parts);
  }
}

MonotoneReport analyze(const MultipartiteState& s, const OptimizerConfig& cfg,
                       const Tripartition& parts, double tol_markov) {
  MonotoneReport r;
  const MultipartiteState c = canonical(s, parts);
  r.markov = is_markov(c, abe(), tol_markov);
  r.i_m = r.markov.cqmi_value;
  r.i_down = i_down(c, cfg);
  r.i_down_star = i_down_star(c, cfg);
  r.i_sq = i_sq(c, cfg);
  r.j_down = j_down(c, cfg);
  r.j_down_star = j_down_star(c, cfg);
  r.d_rec = d_rec(c, cfg);
  return r;
}

}  // namespace qmarkov
