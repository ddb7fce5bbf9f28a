#include "gattack/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

#include "gattack/kernels.hpp"
#include "gattack/rng.hpp"

namespace gattack {

std::string to_string(ScoreMethod m) {
  switch (m) {
    case ScoreMethod::degree: return "degree";
    case ScoreMethod::pagerank: return "pagerank";
    case ScoreMethod::betweenness: return "betweenness";
    case ScoreMethod::random: return "random";
    case ScoreMethod::rwcs: return "rwcs";
    case ScoreMethod::gc_rwcs: return "gc-rwcs";
    case ScoreMethod::none: return "none";
  }
  return "?";
}

ScoreMethod score_method_from_string(const std::string& s) {
  if (s == "degree") return ScoreMethod::degree;
  if (s == "pagerank") return ScoreMethod::pagerank;
  if (s == "betweenness") return ScoreMethod::betweenness;
  if (s == "random") return ScoreMethod::random;
  if (s == "rwcs") return ScoreMethod::rwcs;
  if (s == "gc-rwcs" || s == "gc_rwcs") return ScoreMethod::gc_rwcs;
  if (s == "none") return ScoreMethod::none;
  throw std::invalid_argument("unknown score method: " + s);
}

ScoreVector degree_scores(const Graph& g) {
  ScoreVector s;
  s.method = ScoreMethod::degree;
  s.values.resize(g.n);
  for (int i = 0; i < g.n; ++i) s.values[i] = g.degree(i);
  return s;
}

ScoreVector pagerank_scores(const Graph& g, double damping, double tol, int max_iter) {
  if (damping <= 0.0 || damping >= 1.0)
    throw std::invalid_argument("pagerank damping must be in (0,1)");
  std::vector<double> inv_deg(g.n);
  for (int i = 0; i < g.n; ++i) inv_deg[i] = 1.0 / g.degree(i);

  std::vector<double> p(g.n, 1.0 / g.n), next(g.n);
  const double restart = (1.0 - damping) / g.n;
  double residual = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    kernels::walk_step(g, inv_deg, p.data(), next.data());
    residual = 0.0;
    for (int i = 0; i < g.n; ++i) {
      next[i] = restart + damping * next[i];
      residual += std::abs(next[i] - p[i]);
    }
    std::swap(p, next);
    if (residual < tol) {
      ScoreVector s;
      s.method = ScoreMethod::pagerank;
      s.values = std::move(p);
      return s;
    }
  }
  throw std::runtime_error("pagerank did not converge after " + std::to_string(max_iter) +
                           " iterations (L1 residual " + std::to_string(residual) + ")");
}

namespace {

// One Brandes source pass; adds pair dependencies into acc.
void brandes_source(const Graph& g, int s, std::vector<double>& acc, std::vector<int>& order,
                    std::vector<int>& dist, std::vector<double>& sigma,
                    std::vector<double>& delta) {
  const int n = g.n;
  dist.assign(n, -1);
  sigma.assign(n, 0.0);
  delta.assign(n, 0.0);
  order.clear();

  dist[s] = 0;
  sigma[s] = 1.0;
  std::size_t head = 0;
  order.push_back(s);
  while (head < order.size()) {
    int u = order[head++];
    for (int v : g.adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        order.push_back(v);
      }
      if (dist[v] == dist[u] + 1) sigma[v] += sigma[u];
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int w = *it;
    for (int v : g.adj[w]) {
      if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
    }
    if (w != s) acc[w] += delta[w];
  }
}

}  // namespace

ScoreVector betweenness_scores(const Graph& g) {
  const int n = g.n;
  const int block_size = 64;
  const int blocks = (n + block_size - 1) / block_size;
  std::vector<std::vector<double>> partial(blocks);

#pragma omp parallel
  {
    std::vector<int> order, dist;
    std::vector<double> sigma, delta;
    order.reserve(n);
#pragma omp for schedule(dynamic)
    for (int b = 0; b < blocks; ++b) {
      partial[b].assign(n, 0.0);
      const int lo = b * block_size;
      const int hi = std::min(n, lo + block_size);
      for (int s = lo; s < hi; ++s) brandes_source(g, s, partial[b], order, dist, sigma, delta);
    }
  }

  ScoreVector out;
  out.method = ScoreMethod::betweenness;
  out.values.assign(n, 0.0);
  for (int b = 0; b < blocks; ++b)
    for (int i = 0; i < n; ++i) out.values[i] += partial[b][i];
  // Undirected: each unordered pair was visited from both endpoints.
  for (double& v : out.values) v *= 0.5;
  return out;
}

ScoreVector random_scores(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  ScoreVector s;
  s.method = ScoreMethod::random;
  s.values.resize(n);
  for (int i = 0; i < n; ++i) s.values[i] = uni(rng);
  return s;
}

void save_scores_csv(const ScoreVector& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scores: " + path);
  out << "node_id,score\n";
  out.precision(17);
  for (std::size_t i = 0; i < s.values.size(); ++i) out << i << "," << s.values[i] << "\n";
}

}  // namespace gattack
