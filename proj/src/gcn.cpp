#include "gattack/gcn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "gattack/rng.hpp"

namespace gattack {

std::string to_string(LossKind k) {
  return k == LossKind::cross_entropy ? "ce" : "cw";
}

LossKind loss_kind_from_string(const std::string& s) {
  if (s == "ce" || s == "cross-entropy" || s == "cross_entropy") return LossKind::cross_entropy;
  if (s == "cw" || s == "carlini-wagner" || s == "carlini_wagner") return LossKind::carlini_wagner;
  throw std::invalid_argument("unknown loss kind: " + s);
}

std::string to_string(Normalization n) {
  return n == Normalization::mean ? "mean" : "symmetric";
}

Normalization normalization_from_string(const std::string& s) {
  if (s == "mean") return Normalization::mean;
  if (s == "symmetric" || s == "sym") return Normalization::symmetric;
  throw std::invalid_argument("unknown normalization: " + s);
}

Mask all_nodes(int n) { return Mask(n, 1); }

int mask_count(const Mask& m) {
  return static_cast<int>(std::count(m.begin(), m.end(), std::uint8_t{1}));
}

SplitSpec make_split(int n, double train_frac, double val_frac, std::uint64_t seed) {
  if (train_frac < 0 || val_frac < 0 || train_frac + val_frac > 1.0)
    throw std::invalid_argument("make_split: bad fractions");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);

  const int n_train = static_cast<int>(train_frac * n);
  const int n_val = static_cast<int>(val_frac * n);
  SplitSpec s;
  s.seed = seed;
  s.train.assign(n, 0);
  s.val.assign(n, 0);
  s.test.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    if (i < n_train)
      s.train[perm[i]] = 1;
    else if (i < n_train + n_val)
      s.val[perm[i]] = 1;
    else
      s.test[perm[i]] = 1;
  }
  return s;
}

GcnModel gcn_init(int in_dim, int num_classes, const GcnConfig& cfg) {
  if (cfg.layers < 1 || cfg.hidden < 1) throw std::invalid_argument("gcn_init: bad config");
  if (in_dim < 1 || num_classes < 1) throw std::invalid_argument("gcn_init: bad dimensions");

  GcnModel m;
  m.config = cfg;
  m.in_dim = in_dim;
  m.num_classes = num_classes;

  Rng rng(cfg.seed);
  for (int l = 0; l < cfg.layers; ++l) {
    const int fan_in = l == 0 ? in_dim : cfg.hidden;
    const int fan_out = l == cfg.layers - 1 ? num_classes : cfg.hidden;
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<double> uni(-limit, limit);
    Matrix w(fan_in, fan_out);
    for (double& v : w.a) v = uni(rng);
    m.weights.push_back(std::move(w));
  }
  return m;
}

namespace {

void check_shapes(const GcnModel& m, const Graph& g, const Matrix& x) {
  if (x.rows != g.n) throw std::invalid_argument("gcn: feature rows != n");
  if (x.cols != m.in_dim) throw std::invalid_argument("gcn: feature dim != model in_dim");
  int width = m.in_dim;
  for (const auto& w : m.weights) {
    if (w.rows != width) throw std::invalid_argument("gcn: weight shapes do not chain");
    width = w.cols;
  }
  if (width != m.num_classes) throw std::invalid_argument("gcn: output width != num_classes");
}

struct ForwardCache {
  std::vector<Matrix> aggregated;  // A_hat * H_{l-1}, input to each weight
  std::vector<Matrix> pre;         // pre-activations Z_l
};

Matrix forward_impl(const GcnModel& m, const Graph& g, const Matrix& x, ForwardCache* cache) {
  const int layers = static_cast<int>(m.weights.size());
  Matrix h = x;
  for (int l = 0; l < layers; ++l) {
    Matrix ah(g.n, h.cols);
    kernels::aggregate(g, m.config.norm, false, h, ah);
    Matrix z(g.n, m.weights[l].cols);
    kernels::matmul(ah.a.data(), m.weights[l].a.data(), z.a.data(), g.n, ah.cols,
                    m.weights[l].cols);
    if (cache) {
      cache->aggregated.push_back(std::move(ah));
      cache->pre.push_back(z);
    }
    if (l + 1 < layers)
      for (double& v : z.a) v = v > 0.0 ? v : 0.0;
    h = std::move(z);
  }
  return h;
}

// d loss / d logits for the configured loss over the mask.
Matrix loss_grad_logits(const Matrix& h, const std::vector<int>& y, const Mask& mask,
                        LossKind kind) {
  const int n = h.rows, k = h.cols;
  Matrix dh(n, k, 0.0);
  if (kind == LossKind::cross_entropy) {
    const int cnt = mask_count(mask);
    if (cnt == 0) return dh;
    const double scale = 1.0 / cnt;
    for (int j = 0; j < n; ++j) {
      if (!mask[j]) continue;
      const double* row = h.row(j);
      double mx = row[0];
      for (int c = 1; c < k; ++c) mx = std::max(mx, row[c]);
      double z = 0.0;
      for (int c = 0; c < k; ++c) z += std::exp(row[c] - mx);
      double* out = dh.row(j);
      for (int c = 0; c < k; ++c) out[c] = std::exp(row[c] - mx) / z * scale;
      out[y[j]] -= scale;
    }
  } else {
    for (int j = 0; j < n; ++j) {
      if (!mask[j]) continue;
      const double* row = h.row(j);
      int arg = 0;
      for (int c = 1; c < k; ++c)
        if (row[c] > row[arg]) arg = c;
      if (arg == y[j]) continue;  // flat piece of the max
      double* out = dh.row(j);
      out[arg] += 1.0;
      out[y[j]] -= 1.0;
    }
  }
  return dh;
}

struct BackpropResult {
  std::vector<Matrix> weight_grads;
  Matrix input_grad;  // d loss / d X
};

BackpropResult backprop(const GcnModel& m, const Graph& g, const ForwardCache& cache,
                        Matrix dz_out, bool want_input_grad) {
  const int layers = static_cast<int>(m.weights.size());
  BackpropResult res;
  res.weight_grads.resize(layers);

  Matrix dz = std::move(dz_out);
  for (int l = layers - 1; l >= 0; --l) {
    const Matrix& ah = cache.aggregated[l];
    Matrix dw(m.weights[l].rows, m.weights[l].cols);
    kernels::matmul_tn(ah.a.data(), dz.a.data(), dw.a.data(), g.n, ah.cols, dz.cols);
    res.weight_grads[l] = std::move(dw);

    if (l == 0 && !want_input_grad) break;

    Matrix dah(g.n, ah.cols);
    kernels::matmul_nt(dz.a.data(), m.weights[l].a.data(), dah.a.data(), g.n, dz.cols, ah.cols);
    Matrix dh(g.n, ah.cols);
    kernels::aggregate(g, m.config.norm, true, dah, dh);
    if (l > 0) {
      const Matrix& z_prev = cache.pre[l - 1];
      for (std::size_t i = 0; i < dh.a.size(); ++i)
        if (z_prev.a[i] <= 0.0) dh.a[i] = 0.0;
    }
    dz = std::move(dh);
  }
  if (want_input_grad) res.input_grad = std::move(dz);
  return res;
}

}  // namespace

Matrix gcn_forward(const GcnModel& m, const Graph& g, const Matrix& x) {
  check_shapes(m, g, x);
  return forward_impl(m, g, x, nullptr);
}

double cw_loss(const Matrix& h, const std::vector<int>& y, const Mask& mask) {
  double total = 0.0;
  for (int j = 0; j < h.rows; ++j) {
    if (!mask[j]) continue;
    const double* row = h.row(j);
    double mx = row[0];
    for (int c = 1; c < h.cols; ++c) mx = std::max(mx, row[c]);
    total += mx - row[y[j]];
  }
  return total;
}

double cross_entropy_loss(const Matrix& h, const std::vector<int>& y, const Mask& mask) {
  const int cnt = mask_count(mask);
  if (cnt == 0) return 0.0;
  double total = 0.0;
  for (int j = 0; j < h.rows; ++j) {
    if (!mask[j]) continue;
    const double* row = h.row(j);
    double mx = row[0];
    for (int c = 1; c < h.cols; ++c) mx = std::max(mx, row[c]);
    double z = 0.0;
    for (int c = 0; c < h.cols; ++c) z += std::exp(row[c] - mx);
    total += std::log(z) - (row[y[j]] - mx);
  }
  return total / cnt;
}

double accuracy(const Matrix& h, const std::vector<int>& y, const Mask& mask) {
  const int cnt = mask_count(mask);
  if (cnt == 0) return 0.0;
  int hit = 0;
  for (int j = 0; j < h.rows; ++j) {
    if (!mask[j]) continue;
    const double* row = h.row(j);
    int arg = 0;
    for (int c = 1; c < h.cols; ++c)
      if (row[c] > row[arg]) arg = c;
    if (arg == y[j]) ++hit;
  }
  return static_cast<double>(hit) / cnt;
}

GcnModel train_gcn(const Graph& g, const Matrix& x, const std::vector<int>& y,
                   const SplitSpec& split, const GcnConfig& cfg) {
  if (static_cast<int>(y.size()) != g.n) throw std::invalid_argument("train_gcn: label length != n");
  int num_classes = 0;
  for (int v : y) {
    if (v < 0) throw std::invalid_argument("train_gcn: negative label");
    num_classes = std::max(num_classes, v + 1);
  }

  GcnModel model = gcn_init(x.cols, num_classes, cfg);
  check_shapes(model, g, x);

  const int layers = cfg.layers;
  std::vector<Matrix> adam_m(layers), adam_v(layers);
  for (int l = 0; l < layers; ++l) {
    adam_m[l] = Matrix(model.weights[l].rows, model.weights[l].cols, 0.0);
    adam_v[l] = Matrix(model.weights[l].rows, model.weights[l].cols, 0.0);
  }
  const double beta1 = 0.9, beta2 = 0.999, adam_eps = 1e-8;

  const bool have_val = mask_count(split.val) > 0;
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<Matrix> best_weights = model.weights;
  int stale = 0;

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    ForwardCache cache;
    Matrix h = forward_impl(model, g, x, &cache);

    const double train_ce = cross_entropy_loss(h, y, split.train);
    if (!std::isfinite(train_ce))
      throw std::runtime_error("train_gcn: loss diverged at epoch " + std::to_string(epoch));

    Matrix dh = loss_grad_logits(h, y, split.train, LossKind::cross_entropy);
    BackpropResult grads = backprop(model, g, cache, std::move(dh), false);

    const double bc1 = 1.0 - std::pow(beta1, epoch);
    const double bc2 = 1.0 - std::pow(beta2, epoch);
    for (int l = 0; l < layers; ++l) {
      Matrix& w = model.weights[l];
      const Matrix& dw = grads.weight_grads[l];
      for (std::size_t i = 0; i < w.a.size(); ++i) {
        const double grad = dw.a[i] + cfg.weight_decay * w.a[i];
        adam_m[l].a[i] = beta1 * adam_m[l].a[i] + (1.0 - beta1) * grad;
        adam_v[l].a[i] = beta2 * adam_v[l].a[i] + (1.0 - beta2) * grad * grad;
        const double mhat = adam_m[l].a[i] / bc1;
        const double vhat = adam_v[l].a[i] / bc2;
        w.a[i] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + adam_eps);
      }
    }

    if (have_val) {
      Matrix hv = forward_impl(model, g, x, nullptr);
      const double val_ce = cross_entropy_loss(hv, y, split.val);
      if (!std::isfinite(val_ce))
        throw std::runtime_error("train_gcn: validation loss diverged at epoch " +
                                 std::to_string(epoch));
      if (val_ce < best_val) {
        best_val = val_ce;
        best_weights = model.weights;
        stale = 0;
      } else if (++stale >= cfg.patience) {
        break;
      }
    }
  }
  if (have_val) model.weights = best_weights;

  Matrix h = forward_impl(model, g, x, nullptr);
  model.final_train_ce = cross_entropy_loss(h, y, split.train);
  model.final_val_ce = have_val ? cross_entropy_loss(h, y, split.val) : 0.0;
  model.trained_on = "split(seed=" + std::to_string(split.seed) +
                     ",train=" + std::to_string(mask_count(split.train)) +
                     ",val=" + std::to_string(mask_count(split.val)) +
                     ",test=" + std::to_string(mask_count(split.test)) + ")";
  return model;
}

Matrix feature_gradient(const GcnModel& m, const Graph& g, const Matrix& x,
                        const std::vector<int>& y, LossKind kind) {
  return feature_gradient(m, g, x, y, kind, all_nodes(g.n));
}

Matrix feature_gradient(const GcnModel& m, const Graph& g, const Matrix& x,
                        const std::vector<int>& y, LossKind kind, const Mask& mask) {
  check_shapes(m, g, x);
  ForwardCache cache;
  Matrix h = forward_impl(m, g, x, &cache);
  Matrix dh = loss_grad_logits(h, y, mask, kind);
  BackpropResult res = backprop(m, g, cache, std::move(dh), true);
  return std::move(res.input_grad);
}

std::vector<double> gradient_importance(const GcnModel& m, const Graph& g, const Matrix& x,
                                        const std::vector<int>& y, LossKind kind) {
  Matrix grad = feature_gradient(m, g, x, y, kind);
  std::vector<double> agg(grad.cols, 0.0);
  for (int i = 0; i < grad.rows; ++i) {
    const double* row = grad.row(i);
    for (int c = 0; c < grad.cols; ++c) agg[c] += row[c];
  }
  return agg;
}

AttackEval evaluate_attack(const GcnModel& m, const Graph& g, const Matrix& x,
                           const std::vector<int>& y, const NodeSet& s, const Epsilon& e,
                           const Mask& mask) {
  Matrix h_clean = gcn_forward(m, g, x);
  Matrix h_att = s.empty() ? h_clean : gcn_forward(m, g, apply_tau(x, s, e));

  AttackEval out;
  out.acc_clean = accuracy(h_clean, y, mask);
  out.acc_attacked = accuracy(h_att, y, mask);
  out.ce_clean = cross_entropy_loss(h_clean, y, mask);
  out.ce_attacked = cross_entropy_loss(h_att, y, mask);
  out.cw_clean = cw_loss(h_clean, y, mask);
  out.cw_attacked = cw_loss(h_att, y, mask);
  return out;
}

double first_order_delta(const GcnModel& m, const Graph& g, const Matrix& x,
                         const std::vector<int>& y, int node, const Epsilon& e, LossKind kind) {
  if (node < 0 || node >= g.n) throw std::invalid_argument("first_order_delta: node out of range");
  Matrix grad = feature_gradient(m, g, x, y, kind);
  const double* row = grad.row(node);
  double acc = 0.0;
  for (int c = 0; c < grad.cols; ++c) acc += row[c] * e.values[c];
  return acc;
}

}  // namespace gattack
