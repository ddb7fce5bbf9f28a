#include "gattack/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "gattack/io.hpp"
#include "gattack/perturb.hpp"
#include "gattack/rng.hpp"
#include "gattack/selector.hpp"
#include "gattack/walk.hpp"

namespace gattack {

std::string to_string(EpsilonSource s) {
  switch (s) {
    case EpsilonSource::gradient: return "gradient";
    case EpsilonSource::disclosed: return "disclosed";
    case EpsilonSource::file: return "file";
  }
  return "?";
}

EpsilonSource epsilon_source_from_string(const std::string& s) {
  if (s == "gradient") return EpsilonSource::gradient;
  if (s == "disclosed") return EpsilonSource::disclosed;
  if (s == "file") return EpsilonSource::file;
  throw std::invalid_argument("unknown epsilon source: " + s);
}

std::string to_string(SweepParam p) {
  switch (p) {
    case SweepParam::lambda: return "lambda";
    case SweepParam::j_frac: return "j_frac";
    case SweepParam::walk_steps: return "L";
  }
  return "?";
}

SweepParam sweep_param_from_string(const std::string& s) {
  if (s == "lambda") return SweepParam::lambda;
  if (s == "j_frac" || s == "j-frac") return SweepParam::j_frac;
  if (s == "L" || s == "walk-steps" || s == "walk_steps") return SweepParam::walk_steps;
  throw std::invalid_argument("unknown sweep parameter: " + s);
}

Dataset load_dataset(const ExperimentConfig& cfg) {
  Dataset ds;
  if (cfg.use_synth) {
    ds.g = barabasi_albert(cfg.synth);
    SynthData sd = synth_features_labels(ds.g, cfg.synth);
    ds.x = std::move(sd.x);
    ds.y = std::move(sd.y);
    ds.disclosed_importance.assign(sd.w.size(), 0.0);
    for (int j : sd.important) ds.disclosed_importance[j] = sd.w[j];
    return ds;
  }
  if (cfg.graph_path.empty() || cfg.features_path.empty() || cfg.labels_path.empty())
    throw std::invalid_argument("experiment needs either a synth spec or graph/features/labels paths");
  ds.g = load_edge_list(cfg.graph_path);
  ds.x = load_features_csv(cfg.features_path);
  ds.y = load_labels_csv(cfg.labels_path);
  if (ds.x.rows != ds.g.n || static_cast<int>(ds.y.size()) != ds.g.n)
    throw std::runtime_error("dataset shape mismatch: n=" + std::to_string(ds.g.n) + ", features=" +
                             std::to_string(ds.x.rows) + ", labels=" + std::to_string(ds.y.size()));
  if (!cfg.meta_path.empty()) ds.disclosed_importance = load_disclosed_importance(cfg.meta_path);
  return ds;
}

namespace {

nlohmann::ordered_json config_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["use_synth"] = cfg.use_synth;
  j["synth"] = {{"n", cfg.synth.n},
                {"attach", cfg.synth.attach},
                {"d_features", cfg.synth.d_features},
                {"seed", cfg.synth.seed},
                {"w_scale", cfg.synth.w_scale},
                {"x_scale", cfg.synth.x_scale}};
  j["graph"] = cfg.graph_path;
  j["features"] = cfg.features_path;
  j["labels"] = cfg.labels_path;
  j["meta"] = cfg.meta_path;
  j["importance_file"] = cfg.importance_file;
  j["model"] = {{"layers", cfg.model.layers},
                {"hidden", cfg.model.hidden},
                {"normalization", to_string(cfg.model.norm)},
                {"learning_rate", cfg.model.learning_rate},
                {"epochs", cfg.model.epochs},
                {"weight_decay", cfg.model.weight_decay},
                {"patience", cfg.model.patience}};
  auto strategies = nlohmann::ordered_json::array();
  for (auto s : cfg.strategies) strategies.push_back(to_string(s));
  j["strategies"] = std::move(strategies);
  j["r_frac"] = cfg.r_frac;
  j["threshold_percent"] = cfg.threshold_percent;
  j["L"] = cfg.walk_steps;
  j["k"] = cfg.hops_k;
  j["topl"] = cfg.topl;
  j["lambda"] = cfg.lambda;
  j["j_frac"] = cfg.j_frac;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["eps_loss"] = to_string(cfg.eps_loss);
  j["eps_source"] = to_string(cfg.eps_source);
  j["eval_all_nodes"] = cfg.eval_all_nodes;
  j["train_frac"] = cfg.train_frac;
  j["val_frac"] = cfg.val_frac;
  return j;
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct TrialResult {
  double acc = 0.0, ce = 0.0, cw = 0.0;
  int selected = 0;
  std::vector<std::string> warnings;
};

}  // namespace

std::string config_hash(const ExperimentConfig& cfg) {
  std::ostringstream hex;
  hex << std::hex << fnv1a64(config_json(cfg).dump());
  return hex.str();
}

Report run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("experiment needs trials >= 1");
  if (cfg.strategies.empty()) throw std::invalid_argument("experiment needs at least one strategy");
  if (cfg.r_frac <= 0.0 || cfg.r_frac > 1.0)
    throw std::invalid_argument("experiment needs r_frac in (0,1]");

  const Dataset ds = load_dataset(cfg);
  const int n = ds.g.n;
  const int num_strategies = static_cast<int>(cfg.strategies.size());

  SelectionConstraints constraints;
  constraints.r = static_cast<int>(std::ceil(cfg.r_frac * n));
  constraints.m = degree_threshold(ds.g, cfg.threshold_percent);
  constraints.k = cfg.hops_k;

  // Strategy inputs that do not depend on the trial.
  bool need_walk = false, need_gc = false;
  for (auto s : cfg.strategies) {
    need_walk |= s == ScoreMethod::rwcs;
    need_gc |= s == ScoreMethod::gc_rwcs;
  }
  ScoreVector rwcs_sv;
  if (need_walk) {
    rwcs_sv.values = rwcs_scores(ds.g, cfg.walk_steps);
    rwcs_sv.method = ScoreMethod::rwcs;
  }
  Selection gc_selection;
  if (need_gc) {
    BinaryWalkMatrix mb = binary_walk_matrix(ds.g, cfg.walk_steps, cfg.topl);
    gc_selection = gc_rwcs(ds.g, mb, constraints);
  }
  std::vector<ScoreVector> static_scores(num_strategies);
  for (int si = 0; si < num_strategies; ++si) {
    switch (cfg.strategies[si]) {
      case ScoreMethod::degree: static_scores[si] = degree_scores(ds.g); break;
      case ScoreMethod::pagerank: static_scores[si] = pagerank_scores(ds.g); break;
      case ScoreMethod::betweenness: static_scores[si] = betweenness_scores(ds.g); break;
      case ScoreMethod::rwcs: static_scores[si] = rwcs_sv; break;
      default: break;
    }
  }

  std::vector<double> file_importance;
  if (cfg.eps_source == EpsilonSource::file) {
    if (cfg.importance_file.empty())
      throw std::invalid_argument("eps_source=file needs an importance file");
    file_importance = load_vector_csv(cfg.importance_file);
  }
  if (cfg.eps_source == EpsilonSource::disclosed && ds.disclosed_importance.empty())
    throw std::invalid_argument("eps_source=disclosed needs a dataset with disclosed importance");

  std::vector<std::vector<TrialResult>> results(cfg.trials,
                                                std::vector<TrialResult>(num_strategies));
  std::string trial_error;

#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < cfg.trials; ++t) {
    try {
      const std::uint64_t trial_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));
      SplitSpec split = make_split(n, cfg.train_frac, cfg.val_frac, derive_seed(trial_seed, 1));
      GcnConfig model_cfg = cfg.model;
      model_cfg.seed = derive_seed(trial_seed, 2);
      GcnModel model = train_gcn(ds.g, ds.x, ds.y, split, model_cfg);

      std::vector<double> importance;
      switch (cfg.eps_source) {
        case EpsilonSource::gradient:
          importance = gradient_importance(model, ds.g, ds.x, ds.y, cfg.eps_loss);
          break;
        case EpsilonSource::disclosed: importance = ds.disclosed_importance; break;
        case EpsilonSource::file: importance = file_importance; break;
      }
      const Epsilon eps = cfg.lambda == 0.0 ? zero_epsilon(ds.x.cols)
                                            : build_epsilon(importance, cfg.j_frac, cfg.lambda);
      const Mask mask = cfg.eval_all_nodes ? all_nodes(n) : split.test;

      for (int si = 0; si < num_strategies; ++si) {
        Selection sel;
        switch (cfg.strategies[si]) {
          case ScoreMethod::none: sel.method = ScoreMethod::none; break;
          case ScoreMethod::random:
            sel = select_top_r(random_scores(n, derive_seed(trial_seed, 3)), ds.g, constraints);
            break;
          case ScoreMethod::gc_rwcs: sel = gc_selection; break;
          default: sel = select_top_r(static_scores[si], ds.g, constraints); break;
        }
        AttackEval ev = evaluate_attack(model, ds.g, ds.x, ds.y, sel.nodes, eps, mask);
        TrialResult& tr = results[t][si];
        tr.acc = 100.0 * ev.acc_attacked;
        tr.ce = ev.ce_attacked;
        tr.cw = ev.cw_attacked;
        tr.selected = static_cast<int>(sel.nodes.size());
        tr.warnings = sel.warnings;
      }
    } catch (const std::exception& e) {
#pragma omp critical
      if (trial_error.empty())
        trial_error = "trial " + std::to_string(t) + " failed: " + e.what();
    }
  }
  if (!trial_error.empty()) throw std::runtime_error(trial_error);

  Report report;
  report.config_hash = config_hash(cfg);
  report.master_seed = cfg.seed;
  report.trials = cfg.trials;
  for (int si = 0; si < num_strategies; ++si) {
    StrategyStats st;
    st.name = to_string(cfg.strategies[si]);
    double sum = 0.0, sum_ce = 0.0, sum_cw = 0.0, sum_sel = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      const TrialResult& tr = results[t][si];
      st.per_trial_acc.push_back(tr.acc);
      sum += tr.acc;
      sum_ce += tr.ce;
      sum_cw += tr.cw;
      sum_sel += tr.selected;
      for (const auto& w : tr.warnings)
        if (std::find(st.warnings.begin(), st.warnings.end(), w) == st.warnings.end())
          st.warnings.push_back(w);
    }
    st.mean_acc = sum / cfg.trials;
    st.mean_ce_loss = sum_ce / cfg.trials;
    st.mean_cw_loss = sum_cw / cfg.trials;
    st.mean_selected = sum_sel / cfg.trials;
    if (cfg.trials > 1) {
      double ss = 0.0;
      for (double a : st.per_trial_acc) ss += (a - st.mean_acc) * (a - st.mean_acc);
      st.sem_acc = std::sqrt(ss / (cfg.trials - 1)) / std::sqrt(static_cast<double>(cfg.trials));
    }
    report.strategies.push_back(std::move(st));
  }
  return report;
}

std::vector<Report> sweep(const ExperimentConfig& cfg, SweepParam param,
                          const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
  std::vector<Report> reports;
  for (double v : values) {
    ExperimentConfig c = cfg;
    switch (param) {
      case SweepParam::lambda: c.lambda = v; break;
      case SweepParam::j_frac: c.j_frac = v; break;
      case SweepParam::walk_steps: c.walk_steps = static_cast<int>(v); break;
    }
    Report r = run_experiment(c);
    r.swept_param = to_string(param);
    r.swept_value = v;
    reports.push_back(std::move(r));
  }
  return reports;
}

namespace {

nlohmann::ordered_json report_json(const Report& r) {
  nlohmann::ordered_json j;
  j["config_hash"] = r.config_hash;
  j["master_seed"] = r.master_seed;
  j["trials"] = r.trials;
  j["swept_param"] = r.swept_param;
  j["swept_value"] = r.swept_value;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& s : r.strategies) {
    nlohmann::ordered_json js;
    js["strategy"] = s.name;
    js["mean_acc"] = s.mean_acc;
    js["sem_acc"] = s.sem_acc;
    js["mean_ce_loss"] = s.mean_ce_loss;
    js["mean_cw_loss"] = s.mean_cw_loss;
    js["mean_selected"] = s.mean_selected;
    js["per_trial_acc"] = s.per_trial_acc;
    js["warnings"] = s.warnings;
    arr.push_back(std::move(js));
  }
  j["strategies"] = std::move(arr);
  return j;
}

}  // namespace

void emit_report_json(const Report& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report: " + path);
  out << report_json(r).dump(2) << "\n";
}

void emit_report_csv(const Report& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report: " + path);
  out.precision(17);
  out << "strategy,mean_acc,sem_acc,mean_ce_loss,mean_cw_loss\n";
  for (const auto& s : r.strategies)
    out << s.name << "," << s.mean_acc << "," << s.sem_acc << "," << s.mean_ce_loss << ","
        << s.mean_cw_loss << "\n";
}

Report load_report_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open report: " + path);
  nlohmann::json j;
  in >> j;
  Report r;
  r.config_hash = j.at("config_hash").get<std::string>();
  r.master_seed = j.at("master_seed").get<std::uint64_t>();
  r.trials = j.at("trials").get<int>();
  r.swept_param = j.value("swept_param", "");
  r.swept_value = j.value("swept_value", 0.0);
  for (const auto& js : j.at("strategies")) {
    StrategyStats s;
    s.name = js.at("strategy").get<std::string>();
    s.mean_acc = js.at("mean_acc").get<double>();
    s.sem_acc = js.at("sem_acc").get<double>();
    s.mean_ce_loss = js.at("mean_ce_loss").get<double>();
    s.mean_cw_loss = js.at("mean_cw_loss").get<double>();
    s.mean_selected = js.at("mean_selected").get<double>();
    s.per_trial_acc = js.at("per_trial_acc").get<std::vector<double>>();
    s.warnings = js.at("warnings").get<std::vector<std::string>>();
    r.strategies.push_back(std::move(s));
  }
  return r;
}

}  // namespace gattack
