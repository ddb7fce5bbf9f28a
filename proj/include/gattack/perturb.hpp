#pragma once

#include <string>
#include <vector>

#include "gattack/graph.hpp"
#include "gattack/matrix.hpp"

namespace gattack {

// Constant feature perturbation: j_count coordinates set to +-lambda, the
// rest zero. The same vector is added to every attacked node's feature row.
struct Epsilon {
  std::vector<double> values;
  int j_count = 0;
  double lambda = 0.0;
};

// Picks the floor(j_frac * D) coordinates with the largest |importance|
// (ties to the lower index), sets each to lambda * sign(importance). Zero
// importance coordinates are never selected; the ranking continues past
// them. Throws if importance is all zero.
Epsilon build_epsilon(const std::vector<double>& importance, double j_frac, double lambda);

inline Epsilon zero_epsilon(int d) { return Epsilon{std::vector<double>(d, 0.0), 0, 0.0}; }

// Adds e to the rows in s; all other rows are returned bit-identically.
Matrix apply_tau(const Matrix& x, const NodeSet& s, const Epsilon& e);

std::vector<double> load_vector_csv(const std::string& path);
void save_vector_csv(const std::vector<double>& v, const std::string& path);

}  // namespace gattack
