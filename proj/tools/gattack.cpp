// Command-line frontend: dataset synthesis, model training, node selection,
// single attacks, the full multi-trial experiment protocol, parameter sweeps,
// and the exhaustive theory-oracle suites.

#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "gattack/experiment.hpp"
#include "gattack/io.hpp"
#include "gattack/perturb.hpp"
#include "gattack/rng.hpp"
#include "gattack/selector.hpp"
#include "gattack/theory.hpp"
#include "gattack/walk.hpp"

using namespace gattack;

namespace {

std::vector<ScoreMethod> parse_strategies(const std::string& csv) {
  std::vector<ScoreMethod> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(score_method_from_string(tok));
  }
  if (out.empty()) throw std::invalid_argument("no strategies given");
  return out;
}

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

struct ModelFlags {
  GcnConfig cfg;
  std::string norm = "symmetric";

  void attach(CLI::App* cmd) {
    cmd->add_option("--layers", cfg.layers, "model depth");
    cmd->add_option("--hidden", cfg.hidden, "hidden width");
    cmd->add_option("--norm", norm, "aggregation normalization: mean|symmetric");
    cmd->add_option("--lr", cfg.learning_rate, "learning rate");
    cmd->add_option("--epochs", cfg.epochs, "training epochs");
    cmd->add_option("--weight-decay", cfg.weight_decay, "L2 weight decay");
    cmd->add_option("--patience", cfg.patience, "early-stopping patience");
  }
  GcnConfig resolve() const {
    GcnConfig c = cfg;
    c.norm = normalization_from_string(norm);
    return c;
  }
};

Epsilon make_epsilon_from_flags(const Dataset& ds, const GcnModel& model,
                                const std::string& eps_source, const std::string& eps_loss,
                                const std::string& importance_file, double j_frac,
                                double lambda) {
  if (lambda == 0.0) return zero_epsilon(ds.x.cols);
  std::vector<double> importance;
  switch (epsilon_source_from_string(eps_source)) {
    case EpsilonSource::gradient:
      importance = gradient_importance(model, ds.g, ds.x, ds.y, loss_kind_from_string(eps_loss));
      break;
    case EpsilonSource::disclosed:
      if (ds.disclosed_importance.empty())
        throw std::invalid_argument("disclosed source needs --meta (or a synth dataset)");
      importance = ds.disclosed_importance;
      break;
    case EpsilonSource::file:
      if (importance_file.empty()) throw std::invalid_argument("file source needs --importance");
      importance = load_vector_csv(importance_file);
      break;
  }
  return build_epsilon(importance, j_frac, lambda);
}

int run_synth(const SynthSpec& spec, const std::string& prefix) {
  Graph g = barabasi_albert(spec);
  SynthData data = synth_features_labels(g, spec);
  save_edge_list(g, prefix + ".edges");
  save_features_csv(data.x, prefix + ".features.csv");
  save_labels_csv(data.y, prefix + ".labels.csv");
  save_synth_meta(data, prefix + ".meta.json");
  std::printf("wrote %s.{edges,features.csv,labels.csv,meta.json}: n=%d edges=%lld d=%d\n",
              prefix.c_str(), g.n, g.edge_count, spec.d_features);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"node-selection attacks on graph neural networks under limited node access"};
  app.require_subcommand(1);

  // ---- synth ----
  auto* synth_cmd = app.add_subcommand("synth", "generate a preferential-attachment dataset");
  SynthSpec synth_spec;
  std::string synth_out = "synth";
  synth_cmd->add_option("--n", synth_spec.n, "nodes");
  synth_cmd->add_option("--attach", synth_spec.attach, "edges per arriving node");
  synth_cmd->add_option("--d", synth_spec.d_features, "feature dimension");
  synth_cmd->add_option("--seed", synth_spec.seed, "generator seed");
  synth_cmd->add_option("--w-scale", synth_spec.w_scale, "label weight scale");
  synth_cmd->add_option("--x-scale", synth_spec.x_scale, "feature scale");
  synth_cmd->add_option("--out", synth_out, "output path prefix")->required();

  // ---- train ----
  auto* train_cmd = app.add_subcommand("train", "train the victim model");
  struct {
    std::string graph, features, labels, out, split_out;
    std::uint64_t seed = 0, split_seed = 0;
    double train_frac = 0.6, val_frac = 0.2;
  } train_opt;
  ModelFlags train_model;
  train_cmd->add_option("--graph", train_opt.graph, "edge list")->required();
  train_cmd->add_option("--features", train_opt.features, "feature csv")->required();
  train_cmd->add_option("--labels", train_opt.labels, "label csv")->required();
  train_cmd->add_option("--seed", train_opt.seed, "weight init seed");
  train_cmd->add_option("--split-seed", train_opt.split_seed, "split seed");
  train_cmd->add_option("--train-frac", train_opt.train_frac, "train fraction");
  train_cmd->add_option("--val-frac", train_opt.val_frac, "validation fraction");
  train_cmd->add_option("--out", train_opt.out, "model json output")->required();
  train_cmd->add_option("--split-out", train_opt.split_out, "split mask json output");
  train_model.attach(train_cmd);

  // ---- select ----
  auto* select_cmd = app.add_subcommand("select", "score nodes and pick an attack set");
  struct {
    std::string graph, method = "gc-rwcs", out, scores_out;
    int L = 4, topl = 30, k = 1, r = 0;
    double r_frac = 0.01, threshold = 10.0;
    std::uint64_t seed = 0;
  } sel_opt;
  select_cmd->add_option("--graph", sel_opt.graph, "edge list")->required();
  select_cmd->add_option("--method", sel_opt.method,
                         "degree|pagerank|betweenness|random|rwcs|gc-rwcs");
  select_cmd->add_option("--L", sel_opt.L, "walk steps");
  select_cmd->add_option("--topl", sel_opt.topl, "binarization width l");
  select_cmd->add_option("--k", sel_opt.k, "exclusion hop radius");
  select_cmd->add_option("--r", sel_opt.r, "budget (overrides --r-frac)");
  select_cmd->add_option("--r-frac", sel_opt.r_frac, "budget as a fraction of n");
  select_cmd->add_option("--threshold", sel_opt.threshold, "degree threshold percent");
  select_cmd->add_option("--seed", sel_opt.seed, "seed for the random method");
  select_cmd->add_option("--out", sel_opt.out, "selection json output");
  select_cmd->add_option("--scores-out", sel_opt.scores_out, "score csv output");

  // ---- attack ----
  auto* attack_cmd = app.add_subcommand("attack", "single train-select-perturb-evaluate run");
  struct {
    std::string graph, features, labels, meta, model_in, importance, split_in, out;
    std::string method = "gc-rwcs", eps_source = "gradient", eps_loss = "cw";
    int L = 4, topl = 30, k = 1, r = 0;
    double r_frac = 0.01, threshold = 10.0, lambda = 1.0, j_frac = 0.02;
    std::uint64_t seed = 0, split_seed = 0;
    bool eval_all = false;
  } atk;
  ModelFlags attack_model;
  attack_cmd->add_option("--graph", atk.graph, "edge list")->required();
  attack_cmd->add_option("--features", atk.features, "feature csv")->required();
  attack_cmd->add_option("--labels", atk.labels, "label csv")->required();
  attack_cmd->add_option("--meta", atk.meta, "synth meta json (disclosed importance)");
  attack_cmd->add_option("--model", atk.model_in, "pretrained model json (skips training)");
  attack_cmd->add_option("--split", atk.split_in, "split mask json");
  attack_cmd->add_option("--method", atk.method, "selection strategy");
  attack_cmd->add_option("--eps-source", atk.eps_source, "gradient|disclosed|file");
  attack_cmd->add_option("--loss", atk.eps_loss, "gradient loss kind: cw|ce");
  attack_cmd->add_option("--importance", atk.importance, "importance csv for --eps-source=file");
  attack_cmd->add_option("--L", atk.L, "walk steps");
  attack_cmd->add_option("--topl", atk.topl, "binarization width l");
  attack_cmd->add_option("--k", atk.k, "exclusion hop radius");
  attack_cmd->add_option("--r", atk.r, "budget (overrides --r-frac)");
  attack_cmd->add_option("--r-frac", atk.r_frac, "budget as a fraction of n");
  attack_cmd->add_option("--threshold", atk.threshold, "degree threshold percent");
  attack_cmd->add_option("--lambda", atk.lambda, "perturbation magnitude");
  attack_cmd->add_option("--j-frac", atk.j_frac, "fraction of features to perturb");
  attack_cmd->add_option("--seed", atk.seed, "training/random seed");
  attack_cmd->add_option("--split-seed", atk.split_seed, "split seed (when no --split)");
  attack_cmd->add_flag("--all-nodes", atk.eval_all, "evaluate on all nodes instead of test");
  attack_cmd->add_option("--out", atk.out, "metrics json output");
  attack_model.attach(attack_cmd);

  // ---- experiment ----
  auto* exp_cmd = app.add_subcommand("experiment", "full multi-trial protocol");
  ExperimentConfig exp_cfg;
  std::string exp_strategies = "none,random,degree,pagerank,betweenness,rwcs,gc-rwcs";
  std::string exp_loss = "cw", exp_source = "gradient";
  std::string exp_out, exp_format = "json";
  bool exp_synth = false;
  auto add_experiment_flags = [&](CLI::App* cmd) {
    cmd->add_option("--graph", exp_cfg.graph_path, "edge list");
    cmd->add_option("--features", exp_cfg.features_path, "feature csv");
    cmd->add_option("--labels", exp_cfg.labels_path, "label csv");
    cmd->add_option("--meta", exp_cfg.meta_path, "synth meta json");
    cmd->add_flag("--synth", exp_synth, "generate a synthetic dataset instead of loading");
    cmd->add_option("--synth-n", exp_cfg.synth.n, "synthetic nodes");
    cmd->add_option("--synth-attach", exp_cfg.synth.attach, "synthetic attachment");
    cmd->add_option("--synth-d", exp_cfg.synth.d_features, "synthetic feature dim");
    cmd->add_option("--synth-seed", exp_cfg.synth.seed, "synthetic dataset seed");
    cmd->add_option("--synth-w-scale", exp_cfg.synth.w_scale, "synthetic weight scale");
    cmd->add_option("--synth-x-scale", exp_cfg.synth.x_scale, "synthetic feature scale");
    cmd->add_option("--strategies", exp_strategies, "comma-separated strategy list");
    cmd->add_option("--r-frac", exp_cfg.r_frac, "budget fraction");
    cmd->add_option("--threshold", exp_cfg.threshold_percent, "degree threshold percent");
    cmd->add_option("--L", exp_cfg.walk_steps, "walk steps");
    cmd->add_option("--k", exp_cfg.hops_k, "exclusion hop radius");
    cmd->add_option("--topl", exp_cfg.topl, "binarization width l");
    cmd->add_option("--lambda", exp_cfg.lambda, "perturbation magnitude");
    cmd->add_option("--j-frac", exp_cfg.j_frac, "fraction of features to perturb");
    cmd->add_option("--trials", exp_cfg.trials, "independent trials");
    cmd->add_option("--seed", exp_cfg.seed, "master seed");
    cmd->add_option("--eps-loss", exp_loss, "gradient loss kind: cw|ce");
    cmd->add_option("--eps-source", exp_source, "gradient|disclosed|file");
    cmd->add_option("--importance", exp_cfg.importance_file, "importance csv");
    cmd->add_flag("--all-nodes", exp_cfg.eval_all_nodes, "evaluate on all nodes");
    cmd->add_option("--train-frac", exp_cfg.train_frac, "train fraction");
    cmd->add_option("--val-frac", exp_cfg.val_frac, "validation fraction");
    cmd->add_option("--out", exp_out, "report output path");
    cmd->add_option("--format", exp_format, "json|csv");
  };
  ModelFlags exp_model;
  add_experiment_flags(exp_cmd);
  exp_model.attach(exp_cmd);

  // ---- sweep ----
  auto* sweep_cmd = app.add_subcommand("sweep", "experiment repeated over parameter values");
  std::string sweep_param = "lambda", sweep_values = "0,0.25,0.5,0.75,1";
  ModelFlags sweep_model;
  add_experiment_flags(sweep_cmd);
  sweep_model.attach(sweep_cmd);
  sweep_cmd->add_option("--param", sweep_param, "lambda|j_frac|L");
  sweep_cmd->add_option("--values", sweep_values, "comma-separated values");

  // ---- oracle ----
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive theory suites on a micro instance");
  struct {
    int n = 12, d = 6, pool = 10, budget = 6;
    std::uint64_t seed = 1;
    double lambda = 4.0, j_frac = 0.34;
    std::string out;
  } orc;
  oracle_cmd->add_option("--n", orc.n, "micro instance size (<= 20)");
  oracle_cmd->add_option("--d", orc.d, "feature dimension");
  oracle_cmd->add_option("--pool", orc.pool, "attacker pool size (<= 15)");
  oracle_cmd->add_option("--budget", orc.budget, "profile budget");
  oracle_cmd->add_option("--seed", orc.seed, "seed");
  oracle_cmd->add_option("--lambda", orc.lambda, "perturbation magnitude");
  oracle_cmd->add_option("--j-frac", orc.j_frac, "fraction of features to perturb");
  oracle_cmd->add_option("--out", orc.out, "json report output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (synth_cmd->parsed()) return run_synth(synth_spec, synth_out);

    if (train_cmd->parsed()) {
      Graph g = load_edge_list(train_opt.graph);
      Matrix x = load_features_csv(train_opt.features);
      auto y = load_labels_csv(train_opt.labels);
      GcnConfig cfg = train_model.resolve();
      cfg.seed = train_opt.seed;
      SplitSpec split =
          make_split(g.n, train_opt.train_frac, train_opt.val_frac, train_opt.split_seed);
      GcnModel model = train_gcn(g, x, y, split, cfg);
      save_model_json(model, train_opt.out);
      if (!train_opt.split_out.empty()) save_split_json(split, train_opt.split_out);
      Matrix h = gcn_forward(model, g, x);
      std::printf("trained: train_ce=%.4f val_ce=%.4f test_acc=%.2f%%\n", model.final_train_ce,
                  model.final_val_ce, 100.0 * accuracy(h, y, split.test));
      return 0;
    }

    if (select_cmd->parsed()) {
      Graph g = load_edge_list(sel_opt.graph);
      SelectionConstraints c;
      c.r = sel_opt.r > 0 ? sel_opt.r : static_cast<int>(std::ceil(sel_opt.r_frac * g.n));
      c.m = degree_threshold(g, sel_opt.threshold);
      c.k = sel_opt.k;
      const ScoreMethod method = score_method_from_string(sel_opt.method);

      Selection sel;
      ScoreVector scores;
      if (method == ScoreMethod::gc_rwcs) {
        BinaryWalkMatrix mb = binary_walk_matrix(g, sel_opt.L, sel_opt.topl);
        sel = gc_rwcs(g, mb, c);
      } else {
        switch (method) {
          case ScoreMethod::degree: scores = degree_scores(g); break;
          case ScoreMethod::pagerank: scores = pagerank_scores(g); break;
          case ScoreMethod::betweenness: scores = betweenness_scores(g); break;
          case ScoreMethod::random: scores = random_scores(g.n, sel_opt.seed); break;
          case ScoreMethod::rwcs:
            scores.values = rwcs_scores(g, sel_opt.L);
            scores.method = ScoreMethod::rwcs;
            break;
          default: throw std::invalid_argument("cannot select with method 'none'");
        }
        sel = select_top_r(scores, g, c);
        if (!sel_opt.scores_out.empty()) save_scores_csv(scores, sel_opt.scores_out);
      }
      if (!sel_opt.out.empty()) save_selection_json(sel, sel_opt.out);
      std::printf("selected %zu nodes (m=%d)", sel.nodes.size(), c.m);
      for (const auto& w : sel.warnings) std::printf(" [warning: %s]", w.c_str());
      std::printf("\n");
      return 0;
    }

    if (attack_cmd->parsed()) {
      Dataset ds;
      ds.g = load_edge_list(atk.graph);
      ds.x = load_features_csv(atk.features);
      ds.y = load_labels_csv(atk.labels);
      if (!atk.meta.empty()) ds.disclosed_importance = load_disclosed_importance(atk.meta);

      SplitSpec split;
      bool have_split = false;
      if (!atk.split_in.empty()) {
        split = load_split_json(atk.split_in, ds.g.n);
        have_split = true;
      }

      GcnModel model;
      if (!atk.model_in.empty()) {
        model = load_model_json(atk.model_in);
      } else {
        GcnConfig cfg = attack_model.resolve();
        cfg.seed = atk.seed;
        if (!have_split) {
          split = make_split(ds.g.n, 0.6, 0.2, atk.split_seed);
          have_split = true;
        }
        model = train_gcn(ds.g, ds.x, ds.y, split, cfg);
      }

      SelectionConstraints c;
      c.r = atk.r > 0 ? atk.r : static_cast<int>(std::ceil(atk.r_frac * ds.g.n));
      c.m = degree_threshold(ds.g, atk.threshold);
      c.k = atk.k;

      const ScoreMethod method = score_method_from_string(atk.method);
      Selection sel;
      switch (method) {
        case ScoreMethod::none: break;
        case ScoreMethod::gc_rwcs:
          sel = gc_rwcs(ds.g, binary_walk_matrix(ds.g, atk.L, atk.topl), c);
          break;
        case ScoreMethod::random:
          sel = select_top_r(random_scores(ds.g.n, atk.seed), ds.g, c);
          break;
        case ScoreMethod::degree: sel = select_top_r(degree_scores(ds.g), ds.g, c); break;
        case ScoreMethod::pagerank: sel = select_top_r(pagerank_scores(ds.g), ds.g, c); break;
        case ScoreMethod::betweenness:
          sel = select_top_r(betweenness_scores(ds.g), ds.g, c);
          break;
        case ScoreMethod::rwcs: {
          ScoreVector sv;
          sv.values = rwcs_scores(ds.g, atk.L);
          sv.method = ScoreMethod::rwcs;
          sel = select_top_r(sv, ds.g, c);
          break;
        }
      }

      Epsilon eps = make_epsilon_from_flags(ds, model, atk.eps_source, atk.eps_loss,
                                            atk.importance, atk.j_frac, atk.lambda);
      const Mask mask = atk.eval_all || !have_split ? all_nodes(ds.g.n) : split.test;
      AttackEval ev = evaluate_attack(model, ds.g, ds.x, ds.y, sel.nodes, eps, mask);

      nlohmann::ordered_json j;
      j["method"] = to_string(method);
      j["selected"] = sel.nodes.members;
      j["warnings"] = sel.warnings;
      j["acc_clean"] = 100.0 * ev.acc_clean;
      j["acc_attacked"] = 100.0 * ev.acc_attacked;
      j["ce_clean"] = ev.ce_clean;
      j["ce_attacked"] = ev.ce_attacked;
      j["cw_clean"] = ev.cw_clean;
      j["cw_attacked"] = ev.cw_attacked;
      if (!atk.out.empty()) {
        std::ofstream out(atk.out);
        if (!out) throw std::runtime_error("cannot write " + atk.out);
        out << j.dump(2) << "\n";
      }
      std::printf("%s: acc %.2f%% -> %.2f%% | ce %.4f -> %.4f | cw %.2f -> %.2f\n",
                  to_string(method).c_str(), 100.0 * ev.acc_clean, 100.0 * ev.acc_attacked,
                  ev.ce_clean, ev.ce_attacked, ev.cw_clean, ev.cw_attacked);
      return 0;
    }

    if (exp_cmd->parsed() || sweep_cmd->parsed()) {
      exp_cfg.use_synth = exp_synth;
      exp_cfg.strategies = parse_strategies(exp_strategies);
      exp_cfg.model = (exp_cmd->parsed() ? exp_model : sweep_model).resolve();
      exp_cfg.eps_loss = loss_kind_from_string(exp_loss);
      exp_cfg.eps_source = epsilon_source_from_string(exp_source);

      auto emit = [&](const Report& r, const std::string& path) {
        if (exp_format == "json")
          emit_report_json(r, path);
        else if (exp_format == "csv")
          emit_report_csv(r, path);
        else
          throw std::invalid_argument("unknown format: " + exp_format);
      };
      auto print_summary = [](const Report& r) {
        for (const auto& s : r.strategies)
          std::printf("  %-12s acc %.2f +- %.2f | ce %.4f | cw %.2f | picked %.1f\n",
                      s.name.c_str(), s.mean_acc, s.sem_acc, s.mean_ce_loss, s.mean_cw_loss,
                      s.mean_selected);
      };

      if (exp_cmd->parsed()) {
        Report r = run_experiment(exp_cfg);
        if (!exp_out.empty()) emit(r, exp_out);
        std::printf("experiment (%d trials, hash %s):\n", r.trials, r.config_hash.c_str());
        print_summary(r);
        return 0;
      }

      const SweepParam param = sweep_param_from_string(sweep_param);
      auto values = parse_values(sweep_values);
      auto reports = sweep(exp_cfg, param, values);
      for (std::size_t i = 0; i < reports.size(); ++i) {
        std::printf("%s = %g:\n", to_string(param).c_str(), reports[i].swept_value);
        print_summary(reports[i]);
        if (!exp_out.empty()) {
          std::ostringstream path;
          path << exp_out << "." << to_string(param) << "=" << reports[i].swept_value << "."
               << exp_format;
          emit(reports[i], path.str());
        }
      }
      return 0;
    }

    if (oracle_cmd->parsed()) {
      if (orc.n > 20 || orc.pool > 15)
        throw std::invalid_argument("oracle caps: n <= 20, pool <= 15");
      SynthSpec spec;
      spec.n = orc.n;
      spec.attach = 2;
      spec.d_features = orc.d;
      spec.seed = orc.seed;
      Graph g = barabasi_albert(spec);
      SynthData data = synth_features_labels(g, spec);
      GcnConfig cfg;
      cfg.epochs = 100;
      cfg.seed = derive_seed(orc.seed, 1);
      SplitSpec split = make_split(g.n, 0.6, 0.2, derive_seed(orc.seed, 2));
      GcnModel model = train_gcn(g, data.x, data.y, split, cfg);

      auto importance = gradient_importance(model, g, data.x, data.y, LossKind::carlini_wagner);
      VulnEvaluator ev{&model, &g, &data.x, &data.y,
                       build_epsilon(importance, orc.j_frac, orc.lambda)};

      // lowest-degree nodes form the attacker pool
      std::vector<int> by_degree(g.n);
      std::iota(by_degree.begin(), by_degree.end(), 0);
      std::stable_sort(by_degree.begin(), by_degree.end(),
                       [&](int a, int b) { return g.degree(a) < g.degree(b); });
      const int m_cap = g.degree(by_degree[std::min(orc.pool, g.n) - 1]);
      by_degree.resize(std::min(orc.pool, g.n));
      NodeSet pool = make_node_set(by_degree, g.n);
      NodeSet everyone;
      everyone.members.resize(g.n);
      std::iota(everyone.members.begin(), everyone.members.end(), 0);

      nlohmann::ordered_json j;
      j["n"] = g.n;
      j["pool"] = pool.members;
      j["lambda"] = orc.lambda;
      j["clean_misclassification"] = misclassification_rate(ev, everyone, NodeSet{});

      std::vector<SetFamily> families, basics;
      bool all_monotone = true, singleton_regime = true;
      auto fam_json = nlohmann::ordered_json::array();
      for (int t = 0; t < g.n; ++t) {
        SetFamily a = enumerate_vulnerable_set(ev, t, pool);
        const bool monotone = is_upward_closed(a);
        nlohmann::ordered_json fj;
        fj["target"] = t;
        fj["vulnerable_sets"] = a.sets.size();
        fj["monotone"] = monotone;
        if (monotone) {
          SetFamily b = basic_vulnerable_set(a);
          for (std::uint32_t mask : b.sets)
            if (std::popcount(mask) != 1) singleton_regime = false;
          fj["basic_sets"] = b.sets;
          basics.push_back(std::move(b));
        } else {
          all_monotone = false;
          singleton_regime = false;
        }
        families.push_back(std::move(a));
        fam_json.push_back(std::move(fj));
      }
      j["families"] = std::move(fam_json);
      j["all_monotone"] = all_monotone;
      j["monotonicity_violation_fraction"] =
          monotonicity_violation_fraction(ev, everyone, pool);

      AssumptionStats st = assumption_statistics(families);
      j["homophily"] = {{"shared_sets", st.shared_sets},
                        {"min_b", st.min_b},
                        {"mean_b", st.mean_b},
                        {"min_p", st.min_p},
                        {"mean_p", st.mean_p}};

      j["singleton_regime"] = singleton_regime;
      if (singleton_regime && static_cast<int>(basics.size()) == g.n && g.n <= 15) {
        // lift pool-indexed families to node ids, then run the coverage
        // identity over every subset of the pool
        std::vector<SetFamily> lifted;
        for (const auto& b : basics) {
          std::vector<std::uint32_t> sets;
          for (std::uint32_t mask : b.sets) {
            std::uint32_t lift = 0;
            for (int t = 0; t < static_cast<int>(pool.members.size()); ++t)
              if (mask & (1u << t)) lift |= 1u << pool.members[t];
            sets.push_back(lift);
          }
          lifted.push_back(make_set_family(g.n, sets));
        }
        bool all_equal = true;
        for (std::uint32_t mask = 0; mask < (1u << pool.members.size()); ++mask) {
          std::vector<int> ids;
          for (int t = 0; t < static_cast<int>(pool.members.size()); ++t)
            if (mask & (1u << t)) ids.push_back(pool.members[t]);
          if (!lemma2_identity_check(lifted, make_node_set(ids, g.n)).equal) all_equal = false;
        }
        j["coverage_identity_holds"] = all_equal;
      }

      BinaryWalkMatrix mb = binary_walk_matrix(g, 2, 4);
      SelectionConstraints c;
      c.r = std::min<int>(orc.budget, static_cast<int>(pool.members.size()));
      c.m = m_cap;
      c.k = 0;
      std::vector<int> order = gc_rwcs_order(g, mb, c, nullptr);
      std::vector<int> r_values(order.size() + 1);
      std::iota(r_values.begin(), r_values.end(), 0);
      DiminishProfile prof = diminishing_return_profile(ev, order, r_values, everyone);
      j["profile"] = {{"order", order},
                      {"r_values", prof.r_values},
                      {"h", prof.h},
                      {"max_submodularity_violation", prof.max_violation}};

      const std::string text = j.dump(2);
      if (!orc.out.empty()) {
        std::ofstream out(orc.out);
        if (!out) throw std::runtime_error("cannot write " + orc.out);
        out << text << "\n";
      } else {
        std::cout << text << "\n";
      }
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
