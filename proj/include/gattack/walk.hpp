#pragma once

#include <cstddef>
#include <vector>

#include "gattack/graph.hpp"
#include "gattack/matrix.hpp"

namespace gattack {

// Row-stochastic transition matrix M with M_ij = 1/d_i over the
// self-inclusive neighborhood, stored as CSR. Row i has exactly d_i nonzeros
// and sums to 1.
struct WalkMatrix {
  int n = 0;
  std::vector<std::size_t> row_ptr;
  std::vector<int> col;
  std::vector<double> val;
};

// Binarized L-step matrix of the top-l strictly positive entries per row.
// Rows are sorted column-index sets; steps/topl record how it was built.
struct BinaryWalkMatrix {
  int n = 0;
  int steps = 0;
  int topl = 0;
  std::vector<std::vector<int>> rows;
};

WalkMatrix transition_matrix(const Graph& g);

inline constexpr int kDenseWalkCap = 50000;

// Materialized M^L; row i holds the L-step transition probabilities out of i.
// Throws when n exceeds cap (quadratic memory); the sparse paths
// (rwcs_scores, binary_walk_matrix) handle larger graphs.
Matrix walk_power_dense(const Graph& g, int steps, int cap = kDenseWalkCap);

// RWCS importance scores: column sums of M^L, computed as L sparse products
// of the all-ones row vector with M. Never materializes M^L.
std::vector<double> rwcs_scores(const Graph& g, int steps);

// Per row, marks the l largest strictly positive entries (ties at the cutoff
// go to the lower column index; fewer marks if the row has fewer positives).
BinaryWalkMatrix binarize_topl(const Matrix& power, int l);

// Equivalent to binarize_topl(walk_power_dense(g, steps), l) but streams one
// row of M^L at a time, so it scales past the dense cap.
BinaryWalkMatrix binary_walk_matrix(const Graph& g, int steps, int l);

}  // namespace gattack
