#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gattack/centrality.hpp"
#include "gattack/gcn.hpp"
#include "gattack/graph.hpp"
#include "gattack/synth.hpp"

namespace gattack {

enum class EpsilonSource { gradient, disclosed, file };

std::string to_string(EpsilonSource s);
EpsilonSource epsilon_source_from_string(const std::string& s);

struct ExperimentConfig {
  // Dataset: generated when use_synth, otherwise loaded from files.
  bool use_synth = false;
  SynthSpec synth;
  std::string graph_path, features_path, labels_path, meta_path;
  std::string importance_file;

  GcnConfig model;
  std::vector<ScoreMethod> strategies;
  double r_frac = 0.01;
  double threshold_percent = 10.0;
  int walk_steps = 4;  // L
  int hops_k = 1;
  int topl = 30;
  double lambda = 1.0;
  double j_frac = 0.02;
  int trials = 40;
  std::uint64_t seed = 0;
  LossKind eps_loss = LossKind::carlini_wagner;
  EpsilonSource eps_source = EpsilonSource::gradient;
  bool eval_all_nodes = false;
  double train_frac = 0.6, val_frac = 0.2;
};

struct StrategyStats {
  std::string name;
  double mean_acc = 0.0;  // percent
  double sem_acc = 0.0;
  double mean_ce_loss = 0.0;
  double mean_cw_loss = 0.0;
  double mean_selected = 0.0;
  std::vector<double> per_trial_acc;
  std::vector<std::string> warnings;

  bool operator==(const StrategyStats&) const = default;
};

struct Report {
  std::string config_hash;
  std::uint64_t master_seed = 0;
  int trials = 0;
  std::string swept_param;  // empty outside sweeps
  double swept_value = 0.0;
  std::vector<StrategyStats> strategies;

  bool operator==(const Report&) const = default;
};

struct Dataset {
  Graph g;
  Matrix x;
  std::vector<int> y;
  std::vector<double> disclosed_importance;  // empty unless synth/meta provides it
};

Dataset load_dataset(const ExperimentConfig& cfg);

std::string config_hash(const ExperimentConfig& cfg);

// The full protocol: per trial draws a fresh split, trains the victim model,
// builds the trial's epsilon, runs every strategy's selection against the
// shared constraints, and evaluates on the test mask. Within a trial the
// model, split, and epsilon are identical across strategies; only the
// selected set differs. Deterministic given cfg.seed; trials run in
// parallel.
Report run_experiment(const ExperimentConfig& cfg);

enum class SweepParam { lambda, j_frac, walk_steps };

std::string to_string(SweepParam p);
SweepParam sweep_param_from_string(const std::string& s);

// One report per value; the master seed (hence every trial's split, model
// and importance stream) is shared across values for paired comparison.
std::vector<Report> sweep(const ExperimentConfig& cfg, SweepParam param,
                          const std::vector<double>& values);

void emit_report_json(const Report& r, const std::string& path);
void emit_report_csv(const Report& r, const std::string& path);
Report load_report_json(const std::string& path);

}  // namespace gattack
