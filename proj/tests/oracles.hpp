#pragma once

// Test-only reference implementations, kept deliberately naive and
// independent of the library paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <queue>
#include <random>
#include <vector>

#include "gattack/gcn.hpp"
#include "gattack/graph.hpp"
#include "gattack/matrix.hpp"
#include "gattack/rng.hpp"

namespace oracles {

using gattack::Graph;
using gattack::Matrix;

// --- random graphs ---------------------------------------------------------

// G(n, p) with a random spanning tree overlaid when `connected` is set.
inline Graph random_graph(int n, double p, std::uint64_t seed, bool connected = false) {
  gattack::Rng rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (uni(rng) < p) edges.emplace_back(u, v);
  if (connected) {
    for (int v = 1; v < n; ++v) {
      std::uniform_int_distribution<int> pick(0, v - 1);
      edges.emplace_back(pick(rng), v);
    }
  }
  return gattack::graph_from_edges(n, edges);
}

// --- dense walk-matrix oracle ----------------------------------------------

inline Matrix dense_transition(const Graph& g) {
  Matrix m(g.n, g.n, 0.0);
  for (int i = 0; i < g.n; ++i) {
    const double w = 1.0 / g.degree(i);
    m(i, i) = w;
    for (int j : g.adj[i]) m(i, j) = w;
  }
  return m;
}

inline Matrix dense_matmul(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows, b.cols, 0.0);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k)
      for (int j = 0; j < b.cols; ++j) c(i, j) += a(i, k) * b(k, j);
  return c;
}

inline Matrix dense_walk_power(const Graph& g, int steps) {
  Matrix m = dense_transition(g);
  Matrix p = m;
  for (int t = 1; t < steps; ++t) p = dense_matmul(p, m);
  return p;
}

// --- betweenness oracle: all-pairs path counting ---------------------------

inline std::vector<double> naive_betweenness(const Graph& g) {
  const int n = g.n;
  std::vector<std::vector<int>> dist(n);
  std::vector<std::vector<double>> sigma(n);
  for (int s = 0; s < n; ++s) {
    dist[s].assign(n, -1);
    sigma[s].assign(n, 0.0);
    dist[s][s] = 0;
    sigma[s][s] = 1.0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : g.adj[u]) {
        if (dist[s][w] < 0) {
          dist[s][w] = dist[s][u] + 1;
          q.push(w);
        }
        if (dist[s][w] == dist[s][u] + 1) sigma[s][w] += sigma[s][u];
      }
    }
  }
  std::vector<double> bc(n, 0.0);
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      if (dist[s][t] < 0) continue;
      for (int v = 0; v < n; ++v) {
        if (v == s || v == t) continue;
        if (dist[s][v] >= 0 && dist[v][t] >= 0 && dist[s][v] + dist[v][t] == dist[s][t])
          bc[v] += sigma[s][v] * sigma[v][t] / sigma[s][t];
      }
    }
  return bc;
}

// --- greedy maximum coverage ------------------------------------------------

// Covers as much of the universe as possible with r of the given sets;
// ties go to the lower set index. Returns the pick order.
inline std::vector<int> greedy_max_coverage(const std::vector<std::vector<int>>& sets, int r,
                                            const std::vector<int>& candidates) {
  std::vector<char> covered;
  std::vector<int> picks;
  std::vector<char> used(sets.size(), 0);
  int universe = 0;
  for (const auto& s : sets)
    for (int e : s) universe = std::max(universe, e + 1);
  covered.assign(universe, 0);
  for (int t = 0; t < r; ++t) {
    int best = -1, best_gain = -1;
    for (int i : candidates) {
      if (used[i]) continue;
      int gain = 0;
      for (int e : sets[i])
        if (!covered[e]) ++gain;
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    if (best < 0) break;
    picks.push_back(best);
    used[best] = 1;
    for (int e : sets[best]) covered[e] = 1;
  }
  return picks;
}

// --- straight-line Algorithm-1 reference ------------------------------------

// Literal transcription: dense 0/1 score matrix, linear argmax scan,
// BFS-based k-hop pool exclusion, explicit row zeroing.
inline std::vector<int> reference_gc_rwcs(const Graph& g,
                                          const std::vector<std::vector<int>>& mb_rows, int r,
                                          int m, int k,
                                          const std::vector<double>& fallback_scores) {
  const int n = g.n;
  std::vector<std::vector<char>> q(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j : mb_rows[i]) q[i][j] = 1;

  std::vector<char> pool(n, 0);
  for (int i = 0; i < n; ++i) pool[i] = g.degree(i) <= m;

  std::vector<int> picked;
  bool fallback = false;
  for (int t = 0; t < r; ++t) {
    bool any = false;
    for (int i = 0; i < n; ++i) any |= pool[i] != 0;
    if (!any) break;

    int best = -1;
    if (!fallback) {
      long long best_score = -1;
      for (int i = 0; i < n; ++i) {
        if (!pool[i]) continue;
        long long col = 0;
        for (int row = 0; row < n; ++row) col += q[row][i];
        if (col > best_score) {
          best_score = col;
          best = i;
        }
      }
      if (best_score == 0) fallback = true;
    }
    if (fallback) {
      double best_score = -1.0;
      best = -1;
      for (int i = 0; i < n; ++i) {
        if (!pool[i]) continue;
        if (fallback_scores[i] > best_score) {
          best_score = fallback_scores[i];
          best = i;
        }
      }
    }
    picked.push_back(best);

    // BFS to depth k from the pick; exclude the ball from the pool.
    std::vector<int> dist(n, -1);
    std::queue<int> bq;
    dist[best] = 0;
    bq.push(best);
    while (!bq.empty()) {
      int u = bq.front();
      bq.pop();
      if (dist[u] <= k) pool[u] = 0;
      if (dist[u] >= k) continue;
      for (int v : g.adj[u]) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          bq.push(v);
        }
      }
    }

    for (int i = 0; i < n; ++i)
      if (q[i][best]) std::fill(q[i].begin(), q[i].end(), char{0});
  }
  return picked;
}

// --- finite differences ------------------------------------------------------

template <typename LossFn>
Matrix finite_difference_gradient(const Matrix& x, LossFn loss, double h = 1e-3) {
  Matrix grad(x.rows, x.cols);
  Matrix probe = x;
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) {
      const double orig = probe(i, j);
      probe(i, j) = orig + h;
      const double up = loss(probe);
      probe(i, j) = orig - h;
      const double down = loss(probe);
      probe(i, j) = orig;
      grad(i, j) = (up - down) / (2.0 * h);
    }
  return grad;
}

// --- small statistics ---------------------------------------------------------

inline std::vector<double> ranks(const std::vector<double>& v) {
  const int n = static_cast<int>(v.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] < v[b]; });
  std::vector<double> r(n);
  int i = 0;
  while (i < n) {
    int j = i;
    while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double mid = 0.5 * (i + j) + 1.0;
    for (int t = i; t <= j; ++t) r[idx[t]] = mid;
    i = j + 1;
  }
  return r;
}

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const auto ra = ranks(a), rb = ranks(b);
  const int n = static_cast<int>(a.size());
  double ma = 0, mb = 0;
  for (int i = 0; i < n; ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= n;
  mb /= n;
  double num = 0, va = 0, vb = 0;
  for (int i = 0; i < n; ++i) {
    num += (ra[i] - ma) * (rb[i] - mb);
    va += (ra[i] - ma) * (ra[i] - ma);
    vb += (rb[i] - mb) * (rb[i] - mb);
  }
  return num / std::sqrt(va * vb);
}

// Least-squares line fit; returns R^2.
inline double linear_fit_r2(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (syy == 0.0) return 1.0;
  return sxy * sxy / (sxx * syy);
}

// Dumb upward closure: a mask is present iff some member is a subset of it.
inline std::vector<std::uint32_t> dumb_upward_closure(int ground,
                                                      const std::vector<std::uint32_t>& members) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1u << ground); ++mask) {
    for (std::uint32_t m : members)
      if ((m & mask) == m) {
        out.push_back(mask);
        break;
      }
  }
  return out;
}

// Random antichain over a small ground set: random masks with dominated
// members removed.
inline std::vector<std::uint32_t> random_antichain(int ground, int tries, std::uint64_t seed) {
  gattack::Rng rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(1, (1u << ground) - 1);
  std::vector<std::uint32_t> masks;
  for (int t = 0; t < tries; ++t) masks.push_back(pick(rng));
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  std::vector<std::uint32_t> antichain;
  for (std::uint32_t m : masks) {
    bool dominated = false;
    for (std::uint32_t o : masks)
      if (o != m && (o & m) == o) {
        dominated = true;
        break;
      }
    if (!dominated) antichain.push_back(m);
  }
  return antichain;
}

}  // namespace oracles
