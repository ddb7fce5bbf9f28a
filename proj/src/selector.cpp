#include "gattack/selector.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace gattack {

int degree_threshold(const Graph& g, double percent) {
  if (percent <= 0.0 || percent > 100.0)
    throw std::invalid_argument("degree_threshold percent must be in (0,100]");
  std::vector<int> d = degrees(g);
  std::sort(d.begin(), d.end(), std::greater<int>());
  int count = static_cast<int>(percent / 100.0 * g.n);
  count = std::clamp(count, 1, g.n);
  return d[count - 1];
}

Selection select_top_r(const ScoreVector& scores, const Graph& g, const SelectionConstraints& c) {
  if (static_cast<int>(scores.values.size()) != g.n)
    throw std::invalid_argument("select_top_r: score length != n");
  if (c.r < 1 || c.m < 1) throw std::invalid_argument("select_top_r: need r >= 1 and m >= 1");

  std::vector<int> pool;
  for (int i = 0; i < g.n; ++i)
    if (g.degree(i) <= c.m) pool.push_back(i);
  if (pool.empty()) throw std::runtime_error("select_top_r: empty candidate pool (m too small)");

  const int take = std::min<int>(c.r, static_cast<int>(pool.size()));
  std::partial_sort(pool.begin(), pool.begin() + take, pool.end(), [&](int a, int b) {
    if (scores.values[a] != scores.values[b]) return scores.values[a] > scores.values[b];
    return a < b;
  });
  pool.resize(take);

  Selection sel;
  sel.method = scores.method;
  sel.nodes = make_node_set(std::move(pool), g.n);
  if (take < c.r)
    sel.warnings.push_back("candidate pool smaller than budget: selected " +
                           std::to_string(take) + " of " + std::to_string(c.r));
  return sel;
}

std::vector<int> gc_rwcs_order(const Graph& g, const BinaryWalkMatrix& mb,
                               const SelectionConstraints& c,
                               std::vector<std::string>* warnings) {
  if (mb.n != g.n) throw std::invalid_argument("gc_rwcs: matrix size != n");
  if (c.r < 1 || c.m < 1 || c.k < 0)
    throw std::invalid_argument("gc_rwcs: need r >= 1, m >= 1, k >= 0");

  const int n = g.n;
  std::vector<char> in_pool(n, 0);
  int pool_size = 0;
  for (int i = 0; i < n; ++i) {
    if (g.degree(i) <= c.m) {
      in_pool[i] = 1;
      ++pool_size;
    }
  }
  if (pool_size == 0) throw std::runtime_error("gc_rwcs: empty candidate pool (m too small)");

  // Column sums of Q plus a column -> live rows index for the row zeroing.
  std::vector<int> colsum(n, 0);
  std::vector<std::vector<int>> rows_with(n);
  for (int i = 0; i < n; ++i) {
    for (int j : mb.rows[i]) {
      ++colsum[j];
      rows_with[j].push_back(i);
    }
  }
  std::vector<char> row_alive(n, 1);

  std::vector<double> static_scores;  // lazy; only the zero-score fallback needs it
  bool fallback = false;

  std::vector<int> picked;
  picked.reserve(c.r);
  for (int t = 0; t < c.r; ++t) {
    if (pool_size == 0) {
      if (warnings)
        warnings->push_back("pool emptied after " + std::to_string(t) + " of " +
                            std::to_string(c.r) + " picks");
      break;
    }
    int best = -1;
    if (!fallback) {
      int best_score = -1;
      for (int i = 0; i < n; ++i) {
        if (in_pool[i] && colsum[i] > best_score) {
          best_score = colsum[i];
          best = i;
        }
      }
      if (best_score == 0) {
        fallback = true;
        if (warnings)
          warnings->push_back("adaptive scores exhausted after " + std::to_string(t) +
                              " picks; falling back to static rwcs ordering");
      }
    }
    if (fallback) {
      if (static_scores.empty()) static_scores = rwcs_scores(g, mb.steps >= 1 ? mb.steps : 4);
      double best_score = -1.0;
      best = -1;
      for (int i = 0; i < n; ++i) {
        if (in_pool[i] && static_scores[i] > best_score) {
          best_score = static_scores[i];
          best = i;
        }
      }
    }

    picked.push_back(best);
    // Remove the k-hop ball of the pick from the pool.
    {
      std::vector<int> dist(n, -1);
      std::queue<int> q;
      dist[best] = 0;
      q.push(best);
      while (!q.empty()) {
        int u = q.front();
        q.pop();
        if (in_pool[u]) {
          in_pool[u] = 0;
          --pool_size;
        }
        if (dist[u] == c.k) continue;
        for (int v : g.adj[u]) {
          if (dist[v] < 0) {
            dist[v] = dist[u] + 1;
            q.push(v);
          }
        }
      }
    }
    // Zero every row whose entry in the picked column is 1.
    for (int i : rows_with[best]) {
      if (!row_alive[i]) continue;
      row_alive[i] = 0;
      for (int j : mb.rows[i]) --colsum[j];
    }
  }
  return picked;
}

Selection gc_rwcs(const Graph& g, const BinaryWalkMatrix& mb, const SelectionConstraints& c) {
  Selection sel;
  sel.method = ScoreMethod::gc_rwcs;
  std::vector<int> order = gc_rwcs_order(g, mb, c, &sel.warnings);
  sel.nodes = make_node_set(std::move(order), g.n);
  return sel;
}

void save_selection_json(const Selection& s, const std::string& path) {
  nlohmann::ordered_json j;
  j["method"] = to_string(s.method);
  j["nodes"] = s.nodes.members;
  j["warnings"] = s.warnings;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write selection: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace gattack
