#include "gattack/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "gattack/rng.hpp"

namespace gattack {

Graph barabasi_albert(const SynthSpec& spec) {
  if (spec.attach < 1 || spec.n <= spec.attach)
    throw std::invalid_argument("barabasi_albert: need n > attach >= 1");

  Rng rng(derive_seed(spec.seed, 0xba));
  std::vector<std::pair<int, int>> edges;
  // Endpoint multiset; sampling an index uniformly is degree-proportional.
  std::vector<int> endpoints;

  for (int u = 0; u < spec.attach; ++u)
    for (int v = u + 1; v < spec.attach; ++v) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  if (spec.attach == 1) endpoints.push_back(0);  // lone seed node has no edges yet

  std::unordered_set<int> chosen;
  for (int u = spec.attach; u < spec.n; ++u) {
    chosen.clear();
    while (static_cast<int>(chosen.size()) < spec.attach) {
      std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
      chosen.insert(endpoints[pick(rng)]);
    }
    for (int v : chosen) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  return graph_from_edges(spec.n, edges);
}

SynthData synth_features_labels(const Graph& g, const SynthSpec& spec) {
  if (spec.d_features < 1) throw std::invalid_argument("synth: need d_features >= 1");
  const int n = g.n, d = spec.d_features;

  Rng rng(derive_seed(spec.seed, 0xfea5));
  std::normal_distribution<double> gauss(0.0, 1.0);

  SynthData out;
  out.x = Matrix(n, d);
  for (double& v : out.x.a) v = spec.x_scale * std::abs(gauss(rng));

  for (int attempt = 0; attempt < 10; ++attempt) {
    out.w.assign(d, 0.0);
    for (double& v : out.w) v = spec.w_scale * gauss(rng);

    // Boost the two largest-|w| coordinates; these are the "important
    // features" disclosed to the attacker.
    std::vector<int> idx(d);
    for (int j = 0; j < d; ++j) idx[j] = j;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      const double ma = std::abs(out.w[a]), mb = std::abs(out.w[b]);
      if (ma != mb) return ma > mb;
      return a < b;
    });
    out.important.assign(idx.begin(), idx.begin() + std::min(2, d));
    std::sort(out.important.begin(), out.important.end());
    for (int j : out.important) out.w[j] *= 4.0;

    // xw_i = X_i . w, label from the sign of the (A+I)-aggregated score.
    std::vector<double> xw(n, 0.0);
    for (int i = 0; i < n; ++i) {
      const double* row = out.x.row(i);
      double acc = 0.0;
      for (int j = 0; j < d; ++j) acc += row[j] * out.w[j];
      xw[i] = acc;
    }
    out.y.assign(n, 0);
    int ones = 0;
    for (int i = 0; i < n; ++i) {
      double acc = xw[i];
      for (int j : g.adj[i]) acc += xw[j];
      out.y[i] = acc > 0.0 ? 1 : 0;  // sigmoid(acc) > 0.5
      ones += out.y[i];
    }
    // single-node graphs are single-class by construction
    if (n == 1 || (ones > 0 && ones < n)) return out;
  }
  throw std::runtime_error("synth_features_labels: labels degenerate after 10 redraws of w");
}

void save_synth_meta(const SynthData& d, const std::string& path) {
  nlohmann::ordered_json j;
  j["w"] = d.w;
  j["important_features"] = d.important;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write synth meta: " + path);
  out << j.dump(2) << "\n";
}

std::vector<double> load_disclosed_importance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open synth meta: " + path);
  nlohmann::json j;
  in >> j;
  std::vector<double> w = j.at("w").get<std::vector<double>>();
  std::vector<int> important = j.at("important_features").get<std::vector<int>>();
  std::vector<double> imp(w.size(), 0.0);
  for (int idx : important) {
    if (idx < 0 || idx >= static_cast<int>(w.size()))
      throw std::runtime_error(path + ": important feature index out of range");
    imp[idx] = w[idx];
  }
  return imp;
}

}  // namespace gattack
