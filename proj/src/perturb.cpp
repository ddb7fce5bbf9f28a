#include "gattack/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gattack {

Epsilon build_epsilon(const std::vector<double>& importance, double j_frac, double lambda) {
  if (lambda <= 0.0) throw std::invalid_argument("build_epsilon needs lambda > 0");
  if (j_frac <= 0.0 || j_frac > 1.0) throw std::invalid_argument("build_epsilon needs j_frac in (0,1]");
  const int d = static_cast<int>(importance.size());

  std::vector<int> candidates;
  for (int j = 0; j < d; ++j)
    if (importance[j] != 0.0) candidates.push_back(j);
  if (candidates.empty())
    throw std::invalid_argument("build_epsilon: importance vector is all zero");

  const int j_target = static_cast<int>(j_frac * d);
  const int take = std::min<int>(j_target, static_cast<int>(candidates.size()));
  std::partial_sort(candidates.begin(), candidates.begin() + take, candidates.end(),
                    [&](int a, int b) {
                      const double ma = std::abs(importance[a]), mb = std::abs(importance[b]);
                      if (ma != mb) return ma > mb;
                      return a < b;
                    });

  Epsilon e;
  e.values.assign(d, 0.0);
  e.lambda = lambda;
  e.j_count = take;
  for (int t = 0; t < take; ++t) {
    const int j = candidates[t];
    e.values[j] = importance[j] > 0.0 ? lambda : -lambda;
  }
  return e;
}

Matrix apply_tau(const Matrix& x, const NodeSet& s, const Epsilon& e) {
  if (static_cast<int>(e.values.size()) != x.cols)
    throw std::invalid_argument("apply_tau: epsilon dimension != feature dimension");
  if (!s.members.empty() && (s.members.front() < 0 || s.members.back() >= x.rows))
    throw std::invalid_argument("apply_tau: node id out of range");
  Matrix out = x;
  for (int i : s.members) {
    double* row = out.row(i);
    for (int c = 0; c < x.cols; ++c) row[c] += e.values[c];
  }
  return out;
}

std::vector<double> load_vector_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open vector csv: " + path);
  std::vector<double> v;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::stringstream ls(line);
    std::string tok;
    while (std::getline(ls, tok, ',')) {
      if (tok.empty()) continue;
      try {
        v.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad number '" + tok +
                                 "'");
      }
    }
  }
  if (v.empty()) throw std::runtime_error(path + ": empty vector");
  return v;
}

void save_vector_csv(const std::vector<double>& v, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write vector csv: " + path);
  out.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) out << v[i] << (i + 1 < v.size() ? "," : "");
  out << "\n";
}

}  // namespace gattack
