#include "gattack/graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace gattack {

bool NodeSet::contains(int v) const {
  return std::binary_search(members.begin(), members.end(), v);
}

NodeSet make_node_set(std::vector<int> ids, int n) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (!ids.empty() && (ids.front() < 0 || ids.back() >= n))
    throw std::invalid_argument("node set contains out-of-range ids");
  return NodeSet{std::move(ids)};
}

Graph graph_from_edges(int n_hint, const std::vector<std::pair<int, int>>& edges) {
  int n = n_hint;
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0) throw std::invalid_argument("negative node id in edge list");
    n = std::max(n, std::max(u, v) + 1);
  }
  if (n <= 0) throw std::invalid_argument("empty graph (0 nodes)");

  Graph g;
  g.n = n;
  g.adj.assign(n, {});
  for (const auto& [u, v] : edges) {
    if (u == v) continue;  // stored self-loops are dropped
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  long long half_edges = 0;
  for (auto& nbrs : g.adj) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    half_edges += static_cast<long long>(nbrs.size());
  }
  g.edge_count = half_edges / 2;
  return g;
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);

  std::vector<std::pair<int, int>> edges;
  int n_hint = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank or comment-only line
    if (first.rfind("n=", 0) == 0) {
      try {
        n_hint = std::stoi(first.substr(2));
      } catch (const std::exception&) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad node-count header");
      }
      continue;
    }
    int u = 0, v = 0;
    std::string second, extra;
    if (!(ls >> second) || (ls >> extra)) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected two integer tokens");
    }
    try {
      std::size_t pos_u = 0, pos_v = 0;
      u = std::stoi(first, &pos_u);
      v = std::stoi(second, &pos_v);
      if (pos_u != first.size() || pos_v != second.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected two integer tokens");
    }
    if (u < 0 || v < 0)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": negative node id");
    edges.emplace_back(u, v);
  }
  if (edges.empty() && n_hint <= 0)
    throw std::runtime_error(path + ": empty graph (0 nodes)");
  return graph_from_edges(n_hint, edges);
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write edge list: " + path);
  out << "n=" << g.n << "\n";
  for (int u = 0; u < g.n; ++u)
    for (int v : g.adj[u])
      if (u < v) out << u << " " << v << "\n";
}

std::vector<int> degrees(const Graph& g) {
  std::vector<int> d(g.n);
  for (int i = 0; i < g.n; ++i) d[i] = g.degree(i);
  return d;
}

std::vector<int> bfs_distances(const Graph& g, int src) {
  if (src < 0 || src >= g.n) throw std::invalid_argument("bfs source out of range");
  std::vector<int> dist(g.n, -1);
  std::queue<int> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : g.adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

NodeSet hop_ball(const Graph& g, int center, int k) {
  if (center < 0 || center >= g.n) throw std::invalid_argument("hop_ball center out of range");
  if (k < 0) throw std::invalid_argument("hop_ball needs k >= 0");
  std::vector<int> members{center};
  std::vector<int> dist(g.n, -1);
  dist[center] = 0;
  std::queue<int> q;
  q.push(center);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    if (dist[u] == k) continue;
    for (int v : g.adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        members.push_back(v);
        q.push(v);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return NodeSet{std::move(members)};
}

}  // namespace gattack
