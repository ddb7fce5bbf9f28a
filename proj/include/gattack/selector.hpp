#pragma once

#include <limits>
#include <string>
#include <vector>

#include "gattack/centrality.hpp"
#include "gattack/graph.hpp"
#include "gattack/walk.hpp"

namespace gattack {

// Node-access limits: budget r, degree cap m, and the exclusion hop radius k
// used only by gc_rwcs.
struct SelectionConstraints {
  int r = 1;
  int m = std::numeric_limits<int>::max();
  int k = 1;
};

struct Selection {
  NodeSet nodes;
  ScoreMethod method = ScoreMethod::none;
  std::vector<std::string> warnings;
};

// Lowest self-inclusive degree among the top-percent highest-degree nodes
// (the count is floor(percent/100 * n), at least 1).
int degree_threshold(const Graph& g, double percent);

// The r highest-scoring nodes with d_i <= m; score ties go to the lower node
// id. Returns fewer than r with a warning when the pool is smaller; throws on
// an empty pool.
Selection select_top_r(const ScoreVector& scores, const Graph& g, const SelectionConstraints& c);

// Greedy iterative selection over the binarized walk matrix: repeatedly takes
// the candidate with the largest column sum of Q, drops the k-hop ball of the
// pick from the pool, and zeroes every row of Q whose entry in the picked
// column is 1. Falls back to static RWCS ordering (flagged in warnings) if
// all column sums hit zero before the budget is spent.
Selection gc_rwcs(const Graph& g, const BinaryWalkMatrix& mb, const SelectionConstraints& c);

// Same procedure, exposing the pick order (gc_rwcs sorts it into a set).
std::vector<int> gc_rwcs_order(const Graph& g, const BinaryWalkMatrix& mb,
                               const SelectionConstraints& c, std::vector<std::string>* warnings);

void save_selection_json(const Selection& s, const std::string& path);

}  // namespace gattack
