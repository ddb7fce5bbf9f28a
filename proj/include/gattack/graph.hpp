#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gattack {

// Undirected graph with dense 0..n-1 node ids. Adjacency lists are sorted,
// symmetric, duplicate-free and never store self-loops; the self term is
// applied analytically by consumers (degree(), transition matrix, ...).
// Immutable after construction; concurrent reads are safe.
struct Graph {
  int n = 0;
  long long edge_count = 0;
  std::vector<std::vector<int>> adj;

  // Self-inclusive degree d_i = |N_i| with i in N_i.
  int degree(int i) const { return static_cast<int>(adj[i].size()) + 1; }
};

// Sorted set of distinct node ids.
struct NodeSet {
  std::vector<int> members;

  bool contains(int v) const;
  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }
};

NodeSet make_node_set(std::vector<int> ids, int n);

// Builds a graph from raw (possibly duplicated, unordered) edge pairs.
// Self-edges are dropped. n is max(n_hint, max id + 1); must end up >= 1.
Graph graph_from_edges(int n_hint, const std::vector<std::pair<int, int>>& edges);

// Text edge list: one "u v" pair per line, '#' comments, optional "n=<int>"
// header for isolated nodes.
Graph load_edge_list(const std::string& path);
void save_edge_list(const Graph& g, const std::string& path);

// Self-inclusive degrees of every node; d_i >= 1.
std::vector<int> degrees(const Graph& g);

// All nodes at BFS distance <= k from center, including center.
NodeSet hop_ball(const Graph& g, int center, int k);

// BFS distances from src; unreachable nodes get -1.
std::vector<int> bfs_distances(const Graph& g, int src);

}  // namespace gattack
