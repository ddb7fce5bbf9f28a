#include "gattack/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace gattack {

namespace {

std::vector<int> mask_to_ids(const Mask& m) {
  std::vector<int> ids;
  for (int i = 0; i < static_cast<int>(m.size()); ++i)
    if (m[i]) ids.push_back(i);
  return ids;
}

Mask ids_to_mask(const std::vector<int>& ids, int n) {
  Mask m(n, 0);
  for (int i : ids) {
    if (i < 0 || i >= n) throw std::runtime_error("split mask id out of range");
    m[i] = 1;
  }
  return m;
}

}  // namespace

Matrix load_features_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open features: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ls(line);
    std::string tok;
    while (std::getline(ls, tok, ',')) {
      try {
        row.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad number '" + tok +
                                 "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": ragged row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error(path + ": empty feature matrix");
  Matrix x(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) x(i, j) = rows[i][j];
  return x;
}

void save_features_csv(const Matrix& x, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write features: " + path);
  out.precision(17);
  for (int i = 0; i < x.rows; ++i) {
    for (int j = 0; j < x.cols; ++j) out << x(i, j) << (j + 1 < x.cols ? "," : "");
    out << "\n";
  }
}

std::vector<int> load_labels_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open labels: " + path);
  std::vector<int> y;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      y.push_back(std::stoi(line));
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad label '" + line + "'");
    }
  }
  if (y.empty()) throw std::runtime_error(path + ": empty labels");
  return y;
}

void save_labels_csv(const std::vector<int>& y, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write labels: " + path);
  for (int v : y) out << v << "\n";
}

void save_model_json(const GcnModel& m, const std::string& path) {
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["in_dim"] = m.in_dim;
  j["num_classes"] = m.num_classes;
  j["trained_on"] = m.trained_on;
  j["final_train_ce"] = m.final_train_ce;
  j["final_val_ce"] = m.final_val_ce;
  j["config"] = {{"layers", m.config.layers},
                 {"hidden", m.config.hidden},
                 {"normalization", to_string(m.config.norm)},
                 {"learning_rate", m.config.learning_rate},
                 {"epochs", m.config.epochs},
                 {"weight_decay", m.config.weight_decay},
                 {"patience", m.config.patience},
                 {"seed", m.config.seed}};
  auto layers = nlohmann::ordered_json::array();
  for (const auto& w : m.weights) {
    nlohmann::ordered_json lw;
    lw["rows"] = w.rows;
    lw["cols"] = w.cols;
    lw["data"] = w.a;
    layers.push_back(std::move(lw));
  }
  j["weights"] = std::move(layers);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model: " + path);
  out << j.dump() << "\n";
}

GcnModel load_model_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model: " + path);
  nlohmann::json j;
  in >> j;
  if (j.value("format_version", 0) != 1)
    throw std::runtime_error(path + ": unsupported model format version");

  GcnModel m;
  m.in_dim = j.at("in_dim").get<int>();
  m.num_classes = j.at("num_classes").get<int>();
  m.trained_on = j.value("trained_on", "");
  m.final_train_ce = j.value("final_train_ce", 0.0);
  m.final_val_ce = j.value("final_val_ce", 0.0);
  const auto& c = j.at("config");
  m.config.layers = c.at("layers").get<int>();
  m.config.hidden = c.at("hidden").get<int>();
  m.config.norm = normalization_from_string(c.at("normalization").get<std::string>());
  m.config.learning_rate = c.at("learning_rate").get<double>();
  m.config.epochs = c.at("epochs").get<int>();
  m.config.weight_decay = c.at("weight_decay").get<double>();
  m.config.patience = c.at("patience").get<int>();
  m.config.seed = c.at("seed").get<std::uint64_t>();

  for (const auto& lw : j.at("weights")) {
    Matrix w(lw.at("rows").get<int>(), lw.at("cols").get<int>());
    auto data = lw.at("data").get<std::vector<double>>();
    if (data.size() != w.a.size()) throw std::runtime_error(path + ": weight size mismatch");
    w.a = std::move(data);
    m.weights.push_back(std::move(w));
  }
  return m;
}

void save_split_json(const SplitSpec& s, const std::string& path) {
  nlohmann::ordered_json j;
  j["seed"] = s.seed;
  j["train"] = mask_to_ids(s.train);
  j["val"] = mask_to_ids(s.val);
  j["test"] = mask_to_ids(s.test);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write split: " + path);
  out << j.dump() << "\n";
}

SplitSpec load_split_json(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open split: " + path);
  nlohmann::json j;
  in >> j;
  SplitSpec s;
  s.seed = j.value("seed", std::uint64_t{0});
  s.train = ids_to_mask(j.at("train").get<std::vector<int>>(), n);
  s.val = ids_to_mask(j.at("val").get<std::vector<int>>(), n);
  s.test = ids_to_mask(j.at("test").get<std::vector<int>>(), n);
  return s;
}

}  // namespace gattack
