#pragma once

#include <string>
#include <vector>

#include "gattack/gcn.hpp"
#include "gattack/matrix.hpp"

namespace gattack {

// Dense feature matrix: n rows of D comma-separated reals.
Matrix load_features_csv(const std::string& path);
void save_features_csv(const Matrix& x, const std::string& path);

// Labels: one integer per row.
std::vector<int> load_labels_csv(const std::string& path);
void save_labels_csv(const std::vector<int>& y, const std::string& path);

// Versioned model weights.
void save_model_json(const GcnModel& m, const std::string& path);
GcnModel load_model_json(const std::string& path);

// Split masks.
void save_split_json(const SplitSpec& s, const std::string& path);
SplitSpec load_split_json(const std::string& path, int n);

}  // namespace gattack
