// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.
// Criterion 8 needs the Citeseer files under data/citeseer/ and reports SKIP
// when they are absent.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "gattack/experiment.hpp"
#include "gattack/io.hpp"
#include "gattack/selector.hpp"
#include "gattack/theory.hpp"
#include "gattack/walk.hpp"
#include "oracles.hpp"

using namespace gattack;

namespace {

struct Outcome {
  bool pass = true;
  bool skipped = false;
  std::string detail;
};

int failures = 0;

void run_criterion(int number, const std::string& name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const char* tag = out.skipped ? "SKIP" : out.pass ? "PASS" : "FAIL";
  std::printf("[%s] criterion %d: %s (%.1f s)%s%s\n", tag, number, name.c_str(), secs,
              out.detail.empty() ? "" : " -- ", out.detail.c_str());
  std::fflush(stdout);
  if (!out.pass && !out.skipped) ++failures;
}

bool approx_leq(double a, double b, double tol) { return a <= b + tol; }

// --- criterion 1: stochasticity ---------------------------------------------

Outcome stochasticity_suite() {
  Rng rng(20240801);
  std::uniform_int_distribution<int> size(10, 200);
  std::uniform_real_distribution<double> dens(0.02, 0.3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = trial < 2 ? 500 : size(rng);
    Graph g = oracles::random_graph(n, dens(rng), rng(), trial % 3 == 0);

    WalkMatrix m = transition_matrix(g);
    for (int i = 0; i < n; ++i) {
      double rs = 0.0;
      for (std::size_t p = m.row_ptr[i]; p < m.row_ptr[i + 1]; ++p) rs += m.val[p];
      if (std::abs(rs - 1.0) > 1e-8)
        return {false, false, "transition row sum off at n=" + std::to_string(n)};
    }

    std::vector<double> inv_deg(n);
    for (int i = 0; i < n; ++i) inv_deg[i] = 1.0 / g.degree(i);
    Matrix p = walk_power_dense(g, 1);
    Matrix next(n, n);
    for (int L = 1; L <= 10; ++L) {
      if (L > 1) {
        for (int i = 0; i < n; ++i) kernels::walk_step_serial(g, inv_deg, p.row(i), next.row(i));
        std::swap(p, next);
      }
      for (int i = 0; i < n; ++i) {
        double rs = 0.0;
        for (int j = 0; j < n; ++j) rs += p(i, j);
        if (std::abs(rs - 1.0) > 1e-8)
          return {false, false,
                  "power row sum off at n=" + std::to_string(n) + " L=" + std::to_string(L)};
      }
      auto scores = rwcs_scores(g, L);
      const double total = std::accumulate(scores.begin(), scores.end(), 0.0);
      if (std::abs(total - n) > 1e-6)
        return {false, false, "rwcs total off by " + std::to_string(total - n)};
    }
  }
  return {true, false, "100 graphs, L<=10"};
}

// --- criterion 2: oracle equivalence -----------------------------------------

Outcome oracle_equivalence() {
  Rng rng(77001);
  // sparse rwcs vs dense column sums
  for (int trial = 0; trial < 25; ++trial) {
    std::uniform_int_distribution<int> size(20, 300);
    const int n = trial == 0 ? 500 : size(rng);
    Graph g = oracles::random_graph(n, 0.05, rng(), true);
    for (int L : {1, 4}) {
      Matrix p = walk_power_dense(g, L);
      auto sparse = rwcs_scores(g, L);
      for (int j = 0; j < n; ++j) {
        double col = 0.0;
        for (int i = 0; i < n; ++i) col += p(i, j);
        if (std::abs(col - sparse[j]) > 1e-8)
          return {false, false, "rwcs/dense mismatch at n=" + std::to_string(n)};
      }
    }
  }
  // Brandes vs the naive all-pairs oracle
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<int> size(5, 50);
    const int n = size(rng);
    Graph g = oracles::random_graph(n, 0.15, rng(), true);
    auto lib = betweenness_scores(g).values;
    auto ref = oracles::naive_betweenness(g);
    for (int i = 0; i < n; ++i)
      if (std::abs(lib[i] - ref[i]) > 1e-9)
        return {false, false, "betweenness mismatch at n=" + std::to_string(n)};
  }
  return {true, false, "25 walk graphs + 50 betweenness graphs"};
}

// --- criterion 3: Algorithm-1 fidelity ----------------------------------------

Outcome algorithm1_fidelity() {
  std::mt19937_64 rng(990011);
  for (int inst = 0; inst < 100; ++inst) {
    std::uniform_int_distribution<int> n_d(6, 60), l_d(1, 10), k_d(0, 2), r_d(1, 8), L_d(1, 4);
    std::uniform_real_distribution<double> pct(15.0, 100.0);
    Graph g = oracles::random_graph(n_d(rng), 0.15, rng(), inst % 2 == 0);
    BinaryWalkMatrix mb = binary_walk_matrix(g, L_d(rng), l_d(rng));
    SelectionConstraints c;
    c.r = r_d(rng);
    c.m = degree_threshold(g, pct(rng));
    c.k = k_d(rng);
    auto fallback = rwcs_scores(g, mb.steps);
    auto ref = oracles::reference_gc_rwcs(g, mb.rows, c.r, c.m, c.k, fallback);
    auto lib = gc_rwcs_order(g, mb, c, nullptr);
    if (lib != ref) return {false, false, "reference mismatch at instance " + std::to_string(inst)};
  }
  // singleton regime vs greedy maximum coverage
  for (int inst = 0; inst < 30; ++inst) {
    const int n = 20 + inst;
    std::uniform_int_distribution<int> col(0, n - 1);
    std::vector<std::vector<int>> rows(n), element_sets(n);
    for (int j = 0; j < n; ++j) {
      const int i = col(rng);
      rows[j] = {i};
      element_sets[i].push_back(j);
    }
    int distinct = 0;
    for (int i = 0; i < n; ++i) distinct += !element_sets[i].empty();
    Graph g = oracles::random_graph(n, 0.1, rng(), true);
    BinaryWalkMatrix mb;
    mb.n = n;
    mb.steps = 1;
    mb.topl = 1;
    mb.rows = rows;
    SelectionConstraints c;
    c.r = std::max(1, distinct / 2);
    c.m = n + 1;
    c.k = 0;
    std::vector<int> candidates(n);
    std::iota(candidates.begin(), candidates.end(), 0);
    if (gc_rwcs_order(g, mb, c, nullptr) !=
        oracles::greedy_max_coverage(element_sets, c.r, candidates))
      return {false, false, "coverage mismatch at instance " + std::to_string(inst)};
  }
  return {true, false, "100 reference instances + 30 coverage instances"};
}

// --- criterion 4: gradient check ----------------------------------------------

Outcome gradient_check() {
  Rng rng(440022);
  double worst = 0.0;
  for (int inst = 0; inst < 20; ++inst) {
    std::uniform_int_distribution<int> n_d(6, 30), d_d(2, 8), k_d(2, 4), layer_d(1, 3);
    const int n = n_d(rng), d = d_d(rng), k = k_d(rng);
    Graph g = oracles::random_graph(n, 0.25, rng(), true);
    Matrix x(n, d);
    std::normal_distribution<double> gauss;
    for (double& v : x.a) v = gauss(rng);
    std::vector<int> y(n);
    std::uniform_int_distribution<int> lab(0, k - 1);
    for (int& v : y) v = lab(rng);

    GcnConfig cfg;
    cfg.layers = layer_d(rng);
    cfg.hidden = 6;
    cfg.norm = inst % 2 == 0 ? Normalization::mean : Normalization::symmetric;
    cfg.seed = rng();
    GcnModel m = gcn_init(d, k, cfg);

    Matrix bp = feature_gradient(m, g, x, y, LossKind::cross_entropy);
    auto loss = [&](const Matrix& probe) {
      return cross_entropy_loss(gcn_forward(m, g, probe), y, all_nodes(n));
    };
    Matrix fd = oracles::finite_difference_gradient(x, loss, 1e-3);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < bp.a.size(); ++i) {
      num += (bp.a[i] - fd.a[i]) * (bp.a[i] - fd.a[i]);
      den += fd.a[i] * fd.a[i];
    }
    const double rel = std::sqrt(num / den);
    worst = std::max(worst, rel);
    if (rel >= 1e-4)
      return {false, false, "relative error " + std::to_string(rel) + " at instance " +
                                std::to_string(inst)};
  }
  return {true, false, "20 instances, worst relative error " + std::to_string(worst)};
}

// --- criterion 5: theory-oracle suite -----------------------------------------

Outcome theory_suite() {
  Rng rng(550033);
  int checked = 0;
  for (int inst = 0; checked < 200; ++inst) {
    std::uniform_int_distribution<int> g_d(4, 10), tries_d(2, 10);
    const int ground = g_d(rng);
    auto antichain = oracles::random_antichain(ground, tries_d(rng), rng());
    if (antichain.empty()) continue;
    ++checked;
    auto closed = oracles::dumb_upward_closure(ground, antichain);
    SetFamily a = make_set_family(ground, closed);
    SetFamily b = basic_vulnerable_set(a);  // throws if Definition-4 checks fail
    std::sort(antichain.begin(), antichain.end());
    if (b.sets != antichain)
      return {false, false, "minimal family mismatch at instance " + std::to_string(inst)};

    auto shuffled = closed;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    if (basic_vulnerable_set(make_set_family(ground, shuffled)).sets != b.sets)
      return {false, false, "uniqueness violated at instance " + std::to_string(inst)};
  }

  int identity_checks = 0;
  for (int inst = 0; inst < 60; ++inst) {
    const int n = 2 + static_cast<int>(rng() % 4);  // ground <= 5
    std::uniform_int_distribution<int> coin(0, 3);
    std::vector<SetFamily> bs;
    for (int j = 0; j < n; ++j) {
      std::vector<std::uint32_t> singles;
      if (coin(rng) != 0) {
        for (int i = 0; i < n; ++i)
          if (coin(rng) < 2) singles.push_back(1u << i);
      }
      bs.push_back(make_set_family(n, singles));
    }
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> ids;
      for (int b = 0; b < n; ++b)
        if (mask & (1u << b)) ids.push_back(b);
      if (!lemma2_identity_check(bs, make_node_set(ids, n)).equal)
        return {false, false, "coverage identity broke at instance " + std::to_string(inst)};
      ++identity_checks;
    }
  }
  return {true, false,
          "200 monotone families + " + std::to_string(identity_checks) + " exact identities"};
}

// --- criterion 6: synthetic ordering ------------------------------------------

Outcome synthetic_ordering() {
  double sums[4] = {0, 0, 0, 0};
  const int datasets = 20;
  for (int ds = 0; ds < datasets; ++ds) {
    ExperimentConfig cfg;
    cfg.use_synth = true;
    cfg.synth.n = 3000;
    cfg.synth.d_features = 10;
    cfg.synth.seed = 100 + ds;
    cfg.strategies = {ScoreMethod::none, ScoreMethod::random, ScoreMethod::rwcs,
                      ScoreMethod::gc_rwcs};
    cfg.trials = 2;
    cfg.seed = 1000 + ds;
    cfg.j_frac = 0.2;  // the two disclosed coordinates
    cfg.eps_source = EpsilonSource::disclosed;
    Report r = run_experiment(cfg);
    for (int s = 0; s < 4; ++s) sums[s] += r.strategies[s].mean_acc / datasets;
  }
  const double none = sums[0], random = sums[1], rwcs = sums[2], gc = sums[3];
  char buf[160];
  std::snprintf(buf, sizeof(buf), "none=%.2f random=%.2f rwcs=%.2f gc=%.2f", none, random, rwcs,
                gc);
  if (!(gc <= rwcs)) return {false, false, std::string(buf) + " (gc > rwcs)"};
  if (!(gc <= random - 1.5)) return {false, false, std::string(buf) + " (gc > random - 1.5)"};
  return {true, false, buf};
}

// --- criterion 7: diminishing-return reproduction -------------------------------

Outcome diminishing_return() {
  const std::vector<double> lambdas{0, 0.25, 0.5, 0.75, 1};
  const int datasets = 8;
  std::vector<double> rwcs_acc(5, 0.0), gc_acc(5, 0.0), rwcs_ce(5, 0.0);
  for (int ds = 0; ds < datasets; ++ds) {
    ExperimentConfig cfg;
    cfg.use_synth = true;
    cfg.synth.n = 3000;
    cfg.synth.d_features = 10;
    cfg.synth.seed = 200 + ds;
    cfg.strategies = {ScoreMethod::rwcs, ScoreMethod::gc_rwcs};
    cfg.trials = 2;
    cfg.seed = 3000 + ds;
    cfg.j_frac = 0.2;
    cfg.eps_source = EpsilonSource::disclosed;
    auto reports = sweep(cfg, SweepParam::lambda, lambdas);
    for (int i = 0; i < 5; ++i) {
      rwcs_acc[i] += reports[i].strategies[0].mean_acc / datasets;
      gc_acc[i] += reports[i].strategies[1].mean_acc / datasets;
      rwcs_ce[i] += reports[i].strategies[0].mean_ce_loss / datasets;
    }
  }
  const double r2 = oracles::linear_fit_r2(lambdas, rwcs_ce);
  const double first_half = rwcs_acc[0] - rwcs_acc[2];
  const double second_half = rwcs_acc[2] - rwcs_acc[4];
  char buf[200];
  std::snprintf(buf, sizeof(buf), "R2=%.4f drop[0,.5]=%.2f drop[.5,1]=%.2f gc@1=%.2f rwcs@1=%.2f",
                r2, first_half, second_half, gc_acc[4], rwcs_acc[4]);
  if (!(r2 > 0.95)) return {false, false, std::string(buf) + " (loss not linear)"};
  if (!(second_half < first_half))
    return {false, false, std::string(buf) + " (no saturation)"};
  if (!(gc_acc[4] < rwcs_acc[4]))
    return {false, false, std::string(buf) + " (gc not below rwcs at lambda=1)"};
  return {true, false, buf};
}

// --- criterion 8: Citeseer sanity (conditional) ---------------------------------

Outcome citeseer_sanity() {
  namespace fs = std::filesystem;
  fs::path root = "data/citeseer";
  for (fs::path probe :
       {fs::path("data/citeseer"), fs::path("../data/citeseer"), fs::path("../../data/citeseer")})
    if (fs::exists(probe / "edges.txt")) root = probe;
  const std::string edges = (root / "edges.txt").string();
  const std::string feats = (root / "features.csv").string();
  const std::string labels = (root / "labels.csv").string();
  if (!fs::exists(edges) || !fs::exists(feats) || !fs::exists(labels))
    return {true, true, "dataset files absent under data/citeseer/"};

  Graph g = load_edge_list(edges);
  if (g.n != 3327 || g.edge_count != 4552)
    return {false, false,
            "unexpected citeseer shape: n=" + std::to_string(g.n) + " edges=" +
                std::to_string(g.edge_count)};

  ExperimentConfig cfg;
  cfg.graph_path = edges;
  cfg.features_path = feats;
  cfg.labels_path = labels;
  cfg.strategies = {ScoreMethod::none, ScoreMethod::random, ScoreMethod::gc_rwcs};
  cfg.trials = 10;
  cfg.seed = 4242;
  cfg.eps_source = EpsilonSource::gradient;
  Report r = run_experiment(cfg);
  const double none = r.strategies[0].mean_acc;
  const double random = r.strategies[1].mean_acc;
  const double gc = r.strategies[2].mean_acc;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "none=%.2f random=%.2f gc=%.2f", none, random, gc);
  if (std::abs(none - 75.1) > 3.0)
    return {false, false, std::string(buf) + " (clean accuracy outside 75.1 +- 3.0)"};
  if (!(gc <= random - 3.0))
    return {false, false, std::string(buf) + " (gc not 3 points below random)"};
  return {true, false, buf};
}

// --- criterion 9: L-sensitivity ---------------------------------------------------

Outcome l_sensitivity() {
  const std::vector<double> ls{3, 4, 5, 6, 7};
  const int datasets = 6;
  std::vector<double> acc(5, 0.0);
  for (int ds = 0; ds < datasets; ++ds) {
    ExperimentConfig cfg;
    cfg.use_synth = true;
    cfg.synth.n = 3000;
    cfg.synth.d_features = 10;
    cfg.synth.seed = 400 + ds;
    cfg.strategies = {ScoreMethod::gc_rwcs};
    cfg.trials = 2;
    cfg.seed = 5000 + ds;
    cfg.j_frac = 0.2;
    cfg.eps_source = EpsilonSource::disclosed;
    auto reports = sweep(cfg, SweepParam::walk_steps, ls);
    for (int i = 0; i < 5; ++i) acc[i] += reports[i].strategies[0].mean_acc / datasets;
  }
  const double lo = *std::min_element(acc.begin(), acc.end());
  const double hi = *std::max_element(acc.begin(), acc.end());
  char buf[160];
  std::snprintf(buf, sizeof(buf), "accuracy over L=3..7 in [%.2f, %.2f], spread %.2f", lo, hi,
                hi - lo);
  if (!approx_leq(hi - lo, 3.0, 0.0)) return {false, false, std::string(buf) + " (> 3 points)"};
  return {true, false, buf};
}

}  // namespace

int main() {
  run_criterion(1, "stochasticity suite", stochasticity_suite);
  run_criterion(2, "oracle equivalence", oracle_equivalence);
  run_criterion(3, "Algorithm-1 fidelity", algorithm1_fidelity);
  run_criterion(4, "gradient check", gradient_check);
  run_criterion(5, "theory-oracle suite", theory_suite);
  run_criterion(6, "synthetic ordering", synthetic_ordering);
  run_criterion(7, "diminishing-return reproduction", diminishing_return);
  run_criterion(8, "citeseer sanity", citeseer_sanity);
  run_criterion(9, "L-sensitivity", l_sensitivity);
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed or skipped\n");
  return 0;
}
