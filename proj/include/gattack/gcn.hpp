#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gattack/graph.hpp"
#include "gattack/kernels.hpp"
#include "gattack/matrix.hpp"
#include "gattack/perturb.hpp"

namespace gattack {

using kernels::Normalization;

enum class LossKind { cross_entropy, carlini_wagner };

std::string to_string(LossKind k);
LossKind loss_kind_from_string(const std::string& s);
std::string to_string(Normalization n);
Normalization normalization_from_string(const std::string& s);

struct GcnConfig {
  int layers = 2;
  int hidden = 32;
  Normalization norm = Normalization::symmetric;
  double learning_rate = 0.01;
  int epochs = 200;
  double weight_decay = 5e-4;
  int patience = 20;
  std::uint64_t seed = 0;
};

// Stacked graph convolutions, ReLU on hidden layers, identity at the output.
struct GcnModel {
  std::vector<Matrix> weights;  // weights[l] maps layer width l to l+1
  GcnConfig config;
  int in_dim = 0;
  int num_classes = 0;
  std::string trained_on;
  double final_train_ce = 0.0;
  double final_val_ce = 0.0;
};

// Per-node 0/1 mask.
using Mask = std::vector<std::uint8_t>;

Mask all_nodes(int n);
int mask_count(const Mask& m);

// Disjoint train/validation/test masks covering every node.
struct SplitSpec {
  Mask train, val, test;
  std::uint64_t seed = 0;
};

SplitSpec make_split(int n, double train_frac, double val_frac, std::uint64_t seed);

// Glorot-uniform weights drawn from cfg.seed.
GcnModel gcn_init(int in_dim, int num_classes, const GcnConfig& cfg);

// Output logits, n x K.
Matrix gcn_forward(const GcnModel& m, const Graph& g, const Matrix& x);

// Full-batch Adam on masked cross-entropy with L2 weight decay and early
// stopping on validation cross-entropy (best weights restored). Deterministic
// given cfg.seed. Throws if the loss turns non-finite.
GcnModel train_gcn(const Graph& g, const Matrix& x, const std::vector<int>& y,
                   const SplitSpec& split, const GcnConfig& cfg);

// Sum over masked nodes of (max_k H_jk - H_j,y_j); >= 0, zero iff every
// masked node's true class attains the max.
double cw_loss(const Matrix& h, const std::vector<int>& y, const Mask& mask);

// Softmax cross-entropy averaged over masked nodes.
double cross_entropy_loss(const Matrix& h, const std::vector<int>& y, const Mask& mask);

// Fraction of masked nodes whose argmax logit (ties to the lower class)
// equals the label.
double accuracy(const Matrix& h, const std::vector<int>& y, const Mask& mask);

// Exact reverse-mode d loss / d X, n x D. The loss is taken over `mask`
// (every node by default, matching the attacker's global gradient aggregate).
Matrix feature_gradient(const GcnModel& m, const Graph& g, const Matrix& x,
                        const std::vector<int>& y, LossKind kind);
Matrix feature_gradient(const GcnModel& m, const Graph& g, const Matrix& x,
                        const std::vector<int>& y, LossKind kind, const Mask& mask);

// Column sums of the feature gradient; the importance vector behind the
// constant perturbation construction.
std::vector<double> gradient_importance(const GcnModel& m, const Graph& g, const Matrix& x,
                                        const std::vector<int>& y, LossKind kind);

struct AttackEval {
  double acc_clean = 0.0, acc_attacked = 0.0;
  double ce_clean = 0.0, ce_attacked = 0.0;
  double cw_clean = 0.0, cw_attacked = 0.0;
};

AttackEval evaluate_attack(const GcnModel& m, const Graph& g, const Matrix& x,
                           const std::vector<int>& y, const NodeSet& s, const Epsilon& e,
                           const Mask& mask);

// First-order estimate of the loss change when perturbing a single node:
// gradient row of `node` dotted with epsilon.
double first_order_delta(const GcnModel& m, const Graph& g, const Matrix& x,
                         const std::vector<int>& y, int node, const Epsilon& e,
                         LossKind kind = LossKind::carlini_wagner);

}  // namespace gattack
