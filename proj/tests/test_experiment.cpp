#include "gattack/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "gattack/io.hpp"
#include "oracles.hpp"

using namespace gattack;

namespace {

ExperimentConfig tiny_config() {
  ExperimentConfig cfg;
  cfg.use_synth = true;
  cfg.synth.n = 250;
  cfg.synth.attach = 2;
  cfg.synth.d_features = 6;
  cfg.synth.seed = 5;
  cfg.model.epochs = 40;
  cfg.strategies = {ScoreMethod::none, ScoreMethod::random, ScoreMethod::rwcs,
                    ScoreMethod::gc_rwcs};
  cfg.trials = 3;
  cfg.seed = 11;
  cfg.topl = 8;
  cfg.j_frac = 0.34;  // J = 2 at D = 6
  return cfg;
}

}  // namespace

TEST_CASE("run_experiment is deterministic and records the budget") {
  ExperimentConfig cfg = tiny_config();
  Report a = run_experiment(cfg);
  Report b = run_experiment(cfg);
  CHECK(a == b);
  CHECK(a.trials == 3);
  REQUIRE(a.strategies.size() == 4);

  // r = ceil(0.01 * 250) = 3 for every selecting strategy
  for (const auto& s : a.strategies) {
    if (s.name == "none") {
      CHECK(s.mean_selected == 0.0);
    } else {
      CHECK(s.mean_selected == 3.0);
    }
    CHECK(s.mean_acc >= 0.0);
    CHECK(s.mean_acc <= 100.0);
    CHECK(static_cast<int>(s.per_trial_acc.size()) == a.trials);
  }
}

TEST_CASE("sem recomputes exactly from the stored per-trial values") {
  Report r = run_experiment(tiny_config());
  for (const auto& s : r.strategies) {
    double mean = 0.0;
    for (double v : s.per_trial_acc) mean += v;
    mean /= s.per_trial_acc.size();
    double ss = 0.0;
    for (double v : s.per_trial_acc) ss += (v - mean) * (v - mean);
    const double sem = std::sqrt(ss / (s.per_trial_acc.size() - 1)) /
                       std::sqrt(static_cast<double>(s.per_trial_acc.size()));
    CHECK(s.sem_acc == sem);
    CHECK(s.mean_acc == mean);
  }
}

TEST_CASE("zero lambda reproduces clean accuracy for every strategy") {
  ExperimentConfig cfg = tiny_config();
  cfg.lambda = 0.0;
  Report r = run_experiment(cfg);
  const auto& none = r.strategies[0];
  for (const auto& s : r.strategies) {
    CHECK(s.per_trial_acc == none.per_trial_acc);
    CHECK(s.mean_ce_loss == none.mean_ce_loss);
  }
}

TEST_CASE("sweep shares trial seeds and hits the clean point at lambda zero") {
  ExperimentConfig cfg = tiny_config();
  cfg.strategies = {ScoreMethod::none, ScoreMethod::rwcs};
  auto reports = sweep(cfg, SweepParam::lambda, {0.0, 0.5, 1.0});
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].swept_param == "lambda");
  CHECK(reports[0].swept_value == 0.0);

  // the none row is clean accuracy; identical across sweep points (paired seeds)
  for (const auto& rep : reports)
    CHECK(rep.strategies[0].per_trial_acc == reports[0].strategies[0].per_trial_acc);
  // at lambda = 0 the attacked run equals the clean run
  CHECK(reports[0].strategies[1].per_trial_acc == reports[0].strategies[0].per_trial_acc);

  CHECK_THROWS_AS(sweep(cfg, SweepParam::lambda, {}), std::invalid_argument);
}

TEST_CASE("disclosed epsilon source runs black-box") {
  ExperimentConfig cfg = tiny_config();
  cfg.eps_source = EpsilonSource::disclosed;
  Report r = run_experiment(cfg);
  CHECK(r.strategies.size() == 4);
}

TEST_CASE("config hash tracks content") {
  ExperimentConfig cfg = tiny_config();
  const std::string h1 = config_hash(cfg);
  CHECK(config_hash(cfg) == h1);
  ExperimentConfig other = cfg;
  other.lambda = 0.7;
  CHECK(config_hash(other) != h1);
  Report r = run_experiment(cfg);
  CHECK(r.config_hash == h1);
}

TEST_CASE("report json round trip and csv schema") {
  Report r = run_experiment(tiny_config());
  auto dir = std::filesystem::temp_directory_path();
  const std::string jpath = (dir / "gattack_report.json").string();
  const std::string cpath = (dir / "gattack_report.csv").string();
  emit_report_json(r, jpath);
  emit_report_csv(r, cpath);

  Report back = load_report_json(jpath);
  CHECK(back == r);

  std::ifstream csv(cpath);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "strategy,mean_acc,sem_acc,mean_ce_loss,mean_cw_loss");
  int rows = 0;
  for (std::string line; std::getline(csv, line);) rows += !line.empty();
  CHECK(rows == static_cast<int>(r.strategies.size()));
}

TEST_CASE("experiment validates its configuration") {
  ExperimentConfig cfg = tiny_config();
  cfg.trials = 0;
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
  cfg = tiny_config();
  cfg.strategies.clear();
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
  cfg = tiny_config();
  cfg.use_synth = false;
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
  cfg = tiny_config();
  cfg.r_frac = 0.0;
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}

TEST_CASE("features, labels, split and model files round trip") {
  auto dir = std::filesystem::temp_directory_path();

  Matrix x(4, 3);
  for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] = 0.125 * static_cast<double>(i) - 1.0;
  const std::string fpath = (dir / "gattack_x.csv").string();
  save_features_csv(x, fpath);
  CHECK(load_features_csv(fpath) == x);

  std::vector<int> y{0, 2, 1, 1};
  const std::string lpath = (dir / "gattack_y.csv").string();
  save_labels_csv(y, lpath);
  CHECK(load_labels_csv(lpath) == y);

  SplitSpec split = make_split(9, 0.6, 0.2, 77);
  const std::string spath = (dir / "gattack_split.json").string();
  save_split_json(split, spath);
  SplitSpec back = load_split_json(spath, 9);
  CHECK(back.train == split.train);
  CHECK(back.val == split.val);
  CHECK(back.test == split.test);

  Graph g = oracles::random_graph(9, 0.4, 1, true);
  GcnConfig mc;
  mc.epochs = 10;
  mc.seed = 5;
  GcnModel model = train_gcn(g, Matrix(9, 3, 0.5), {0, 1, 0, 1, 0, 1, 0, 1, 0}, split, mc);
  const std::string mpath = (dir / "gattack_model.json").string();
  save_model_json(model, mpath);
  GcnModel loaded = load_model_json(mpath);
  REQUIRE(loaded.weights.size() == model.weights.size());
  for (std::size_t l = 0; l < loaded.weights.size(); ++l)
    CHECK(loaded.weights[l].a == model.weights[l].a);
  CHECK(loaded.config.hidden == model.config.hidden);
  CHECK(loaded.num_classes == model.num_classes);
}
