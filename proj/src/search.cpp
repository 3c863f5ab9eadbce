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

#include "qmarkov/search.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace qmarkov {

ComplexMatrix polar_retract(const ComplexMatrix& w) {
  Eigen::JacobiSVD<ComplexMatrix> svd(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

ComplexMatrix retract(const ComplexMatrix& w, BlockKind kind) {
  if (kind == BlockKind::kStiefel) return polar_retract(w);
  ComplexMatrix out = w;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    const double n = out.col(j).norm();
    if (n > 1e-300) {
      out.col(j) /= n;
    } else {
      out.col(j).setZero();
      out(0, j) = 1.0;
    }
  }
  return out;
}

Point random_point(const std::vector<Block>& blocks, Rng& rng) {
  Point p;
  p.reserve(blocks.size());
  for (const auto& b : blocks) {
    if (b.kind == BlockKind::kStiefel) {
      p.push_back(random_isometry_matrix(b.cols, b.rows, rng));
    } else {
      p.push_back(retract(gaussian_matrix(b.rows, b.cols, rng), b.kind));
    }
  }
  return p;
}

std::uint64_t restart_seed(std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

namespace {

/// One (1+1)-ES trajectory; kept whole so a run can be resumed.
struct Restart {
  Point x;
  double value = std::numeric_limits<double>::infinity();
  double step = 0.0;
  Rng rng;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

double safe_eval(const Objective& f, const Point& p) {
  const double v = f(p);
  return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

Restart start_restart(const std::vector<Block>& blocks, const Objective& f,
                      const SearchConfig& cfg, const std::optional<Point>& anchor, int r) {
  const std::uint64_t seed = restart_seed(cfg.seed, r);
  Restart out;
  if (r == 0 && anchor) {
    out.x = *anchor;
  } else {
    Rng init(seed ^ 0x9e3779b97f4a7c15ULL);
    out.x = random_point(blocks, init);
  }
  out.rng.seed(seed);
  out.step = cfg.initial_step;
  out.value = safe_eval(f, out.x);
  out.evaluations = 1;
  return out;
}

void advance(Restart& st, const std::vector<Block>& blocks, const Objective& f,
             const SearchConfig& cfg, int budget) {
  const double shrink = std::pow(1.3, -0.25);
  for (int it = 0; it < budget && !st.converged; ++it) {
    if (st.step <= cfg.step_tolerance || st.value <= cfg.floor) {
      st.converged = true;
      break;
    }
    Point cand;
    cand.reserve(blocks.size());
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      const Block& b = blocks[k];
      const double scale = st.step / std::sqrt(static_cast<double>(b.rows));
      cand.push_back(retract(st.x[k] + scale * gaussian_matrix(b.rows, b.cols, st.rng), b.kind));
    }
    const double fc = safe_eval(f, cand);
    ++st.evaluations;
    ++st.iterations;
    if (fc < st.value) {
      st.x = std::move(cand);
      st.value = fc;
      st.step = std::min(st.step * 1.3, 2.0);
    } else {
      st.step *= shrink;
    }
  }
  if (st.step <= cfg.step_tolerance || st.value <= cfg.floor) st.converged = true;
}

/// Runs job(i) for i in [0, n) on up to `threads` workers. Jobs with index
/// above the current value of `cutoff` are skipped.
template <class Job>
void parallel_for(int n, int threads, const std::atomic<int>& cutoff, Job&& job) {
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      if (i > cutoff.load()) continue;
      job(i);
    }
  };
  const int t = std::clamp(threads, 1, std::max(n, 1));
  if (t == 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (int k = 0; k < t; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

void lower_to(std::atomic<int>& target, int r) {
  int cur = target.load();
  while (r < cur && !target.compare_exchange_weak(cur, r)) {
  }
}

}  // namespace

SearchResult minimize(const std::vector<Block>& blocks, const Objective& f,
                      const SearchConfig& cfg, const std::optional<Point>& anchor) {
  if (cfg.restarts < 1 || cfg.max_iters < 0 || cfg.polish_keep < 0 || cfg.polish_iters < 0) {
    throw InputError("bad search configuration");
  }
  if (anchor) {
    if (anchor->size() != blocks.size()) throw ShapeError("anchor has wrong block count");
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      if ((*anchor)[k].rows() != blocks[k].rows || (*anchor)[k].cols() != blocks[k].cols) {
        throw ShapeError("anchor block has wrong shape");
      }
    }
  }
  std::vector<std::optional<Restart>> runs(cfg.restarts);
  // Lowest restart index that reached the floor; later restarts are skipped.
  std::atomic<int> floor_index{cfg.restarts};

  parallel_for(cfg.restarts, cfg.threads, floor_index, [&](int r) {
    runs[r] = start_restart(blocks, f, cfg, anchor, r);
    advance(*runs[r], blocks, f, cfg, cfg.max_iters);
    if (runs[r]->value <= cfg.floor) lower_to(floor_index, r);
  });

  auto better = [&](int a, int b) {
    return runs[a]->value < runs[b]->value || (runs[a]->value == runs[b]->value && a < b);
  };
  const int last = std::min(floor_index.load(), cfg.restarts - 1);

  // Polish stage: the best few unconverged trajectories continue.
  if (floor_index.load() >= cfg.restarts && cfg.polish_keep > 0 && cfg.polish_iters > 0) {
    std::vector<int> order;
    for (int r = 0; r < cfg.restarts; ++r) order.push_back(r);
    std::sort(order.begin(), order.end(), better);
    std::vector<int> kept;
    for (int r : order) {
      if (static_cast<int>(kept.size()) == cfg.polish_keep) break;
      if (!runs[r]->converged) kept.push_back(r);
    }
    const std::atomic<int> all{static_cast<int>(kept.size())};
    parallel_for(static_cast<int>(kept.size()), cfg.threads, all,
                 [&](int i) { advance(*runs[kept[i]], blocks, f, cfg, cfg.polish_iters); });
  }

  int chosen = -1;
  if (floor_index.load() < cfg.restarts) {
    chosen = floor_index.load();
  } else {
    for (int r = 0; r < cfg.restarts; ++r) {
      if (chosen < 0 || better(r, chosen)) chosen = r;
    }
  }
  SearchResult res;
  for (int r = 0; r <= last; ++r) {
    if (!runs[r]) continue;
    res.iterations += runs[r]->iterations;
    res.evaluations += runs[r]->evaluations;
  }
  res.best = runs[chosen]->x;
  res.value = runs[chosen]->value;
  res.restart = chosen;
  res.converged = runs[chosen]->converged;
  return res;
}

}  // namespace qmarkov
