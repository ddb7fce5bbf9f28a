#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gattack/graph.hpp"
#include "gattack/matrix.hpp"

namespace gattack {

struct SynthSpec {
  int n = 3000;
  int attach = 2;       // edges per arriving node
  int d_features = 10;
  std::uint64_t seed = 0;
  double w_scale = 1.0;
  // Feature standard deviation before the absolute value. 0.05 puts the
  // default lambda=1 perturbation in the considerable regime relative to the
  // feature norm, mirroring the ratio on binary bag-of-words benchmarks.
  double x_scale = 0.05;
};

// Preferential attachment starting from a complete graph on `attach` nodes;
// every arriving node connects to `attach` distinct existing nodes sampled
// proportionally to degree. Connected, deterministic per seed.
Graph barabasi_albert(const SynthSpec& spec);

struct SynthData {
  Matrix x;                    // |N(0, I)| features
  std::vector<int> y;          // 1 iff sigmoid((A+I)XW) > 0.5
  std::vector<double> w;       // label weights
  std::vector<int> important;  // indices of the two dominant |w| entries
};

// Features, binary labels, and the label weight vector. Two coordinates of w
// are boosted to large magnitude and disclosed via `important`, standing in
// for the attacker's domain knowledge. Degenerate single-class draws retry
// with fresh w up to 10 times, then throw.
SynthData synth_features_labels(const Graph& g, const SynthSpec& spec);

// Sidecar with w and the disclosed indices.
void save_synth_meta(const SynthData& d, const std::string& path);
std::vector<double> load_disclosed_importance(const std::string& path);

}  // namespace gattack
