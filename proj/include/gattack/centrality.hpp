#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gattack/graph.hpp"

namespace gattack {

enum class ScoreMethod { degree, pagerank, betweenness, random, rwcs, gc_rwcs, none };

std::string to_string(ScoreMethod m);
ScoreMethod score_method_from_string(const std::string& s);

struct ScoreVector {
  std::vector<double> values;
  ScoreMethod method = ScoreMethod::none;
};

ScoreVector degree_scores(const Graph& g);

// Power iteration for the restart-augmented walk on the self-loop transition
// matrix; values sum to 1. Throws after max_iter without an L1 residual
// below tol.
ScoreVector pagerank_scores(const Graph& g, double damping = 0.85, double tol = 1e-10,
                            int max_iter = 1000);

// Exact Brandes betweenness, unweighted shortest paths, each unordered pair
// counted once. Per-source accumulation runs in fixed-size source blocks
// merged in block order, so results do not depend on the thread count.
ScoreVector betweenness_scores(const Graph& g);

// Seeded i.i.d. uniform [0,1) scores.
ScoreVector random_scores(int n, std::uint64_t seed);

void save_scores_csv(const ScoreVector& s, const std::string& path);

}  // namespace gattack
