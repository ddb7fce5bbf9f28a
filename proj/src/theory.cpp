#include "gattack/theory.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace gattack {

namespace {

constexpr int kMaxGround = 25;  // 2^ground bitsets below

std::vector<char> presence(const SetFamily& f) {
  std::vector<char> present(std::size_t{1} << f.ground_size, 0);
  for (std::uint32_t s : f.sets) present[s] = 1;
  return present;
}

void check_ground(const SetFamily& f, const char* who) {
  if (f.ground_size < 0 || f.ground_size > kMaxGround)
    throw std::runtime_error(std::string(who) + ": ground size " +
                             std::to_string(f.ground_size) + " out of supported range");
}

NodeSet subset_of_pool(const NodeSet& pool, std::uint32_t mask) {
  std::vector<int> ids;
  for (int t = 0; t < static_cast<int>(pool.members.size()); ++t)
    if (mask & (1u << t)) ids.push_back(pool.members[t]);
  return NodeSet{std::move(ids)};  // pool is sorted, so the subset is too
}

}  // namespace

bool SetFamily::contains(std::uint32_t mask) const {
  return std::binary_search(sets.begin(), sets.end(), mask);
}

SetFamily make_set_family(int ground_size, std::vector<std::uint32_t> sets) {
  if (ground_size < 0 || ground_size > 31)
    throw std::invalid_argument("set family ground size out of range");
  const std::uint32_t limit = ground_size == 31 ? 0x7fffffffu : (1u << ground_size);
  for (std::uint32_t s : sets)
    if (ground_size < 31 && s >= limit)
      throw std::invalid_argument("set family member exceeds ground set");
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  return SetFamily{ground_size, std::move(sets)};
}

SetFamily upward_closure(const SetFamily& f) {
  check_ground(f, "upward_closure");
  auto present = presence(f);
  const std::size_t total = present.size();
  for (int b = 0; b < f.ground_size; ++b) {
    const std::uint32_t bit = 1u << b;
    for (std::uint32_t s = 0; s < total; ++s)
      if ((s & bit) && present[s ^ bit]) present[s] = 1;
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0; s < total; ++s)
    if (present[s]) out.push_back(s);
  return SetFamily{f.ground_size, std::move(out)};
}

bool is_upward_closed(const SetFamily& f) {
  check_ground(f, "is_upward_closed");
  auto present = presence(f);
  for (std::uint32_t s : f.sets)
    for (int b = 0; b < f.ground_size; ++b)
      if (!(s & (1u << b)) && !present[s | (1u << b)]) return false;
  return true;
}

int vulnerable_function(const VulnEvaluator& ev, int target, const NodeSet& s) {
  if (target < 0 || target >= ev.g->n)
    throw std::invalid_argument("vulnerable_function: target out of range");
  Matrix h = gcn_forward(*ev.model, *ev.g, apply_tau(*ev.x, s, ev.eps));
  const double* row = h.row(target);
  int arg = 0;
  for (int c = 1; c < h.cols; ++c)
    if (row[c] > row[arg]) arg = c;
  return arg != (*ev.y)[target] ? 1 : 0;
}

SetFamily enumerate_vulnerable_set(const VulnEvaluator& ev, int target, const NodeSet& pool) {
  const int p = static_cast<int>(pool.members.size());
  if (p > 15)
    throw std::runtime_error("enumerate_vulnerable_set: pool of " + std::to_string(p) +
                             " nodes needs 2^" + std::to_string(p) + " evaluations; cap is 15");
  const std::uint32_t total = 1u << p;
  std::vector<char> vulnerable(total, 0);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t mask = 0; mask < static_cast<std::int64_t>(total); ++mask) {
    vulnerable[mask] = static_cast<char>(
        vulnerable_function(ev, target, subset_of_pool(pool, static_cast<std::uint32_t>(mask))));
  }
  std::vector<std::uint32_t> sets;
  for (std::uint32_t mask = 0; mask < total; ++mask)
    if (vulnerable[mask]) sets.push_back(mask);
  return SetFamily{p, std::move(sets)};
}

SetFamily basic_vulnerable_set(const SetFamily& a) {
  check_ground(a, "basic_vulnerable_set");
  if (!is_upward_closed(a))
    throw std::invalid_argument("basic_vulnerable_set: family is not monotone (upward-closed)");

  auto present = presence(a);
  std::vector<std::uint32_t> minimal;
  if (!present[0]) {  // empty set in A forces B = {}
    for (std::uint32_t s : a.sets) {
      bool is_minimal = true;
      for (int b = 0; b < a.ground_size && is_minimal; ++b)
        if ((s & (1u << b)) && present[s ^ (1u << b)]) is_minimal = false;
      if (is_minimal) minimal.push_back(s);
    }
  }
  SetFamily out{a.ground_size, std::move(minimal)};

  // Definition check: 1) no empty member, and B empty when {} in A;
  // 2) every nonempty member of A has a subset in B; 3) members of B are
  // pairwise incomparable.
  if (out.contains(0) || (present[0] && !out.sets.empty()))
    throw std::logic_error("basic_vulnerable_set: condition 1 violated");
  if (!present[0]) {
    for (std::uint32_t s : a.sets) {
      bool covered = false;
      for (std::uint32_t t : out.sets)
        if ((t & s) == t) {
          covered = true;
          break;
        }
      if (!covered) throw std::logic_error("basic_vulnerable_set: condition 2 violated");
    }
  }
  for (std::size_t i = 0; i < out.sets.size(); ++i)
    for (std::size_t j = i + 1; j < out.sets.size(); ++j) {
      const std::uint32_t s = out.sets[i], t = out.sets[j];
      if ((s & t) == s || (s & t) == t)
        throw std::logic_error("basic_vulnerable_set: condition 3 violated");
    }
  return out;
}

double misclassification_rate(const VulnEvaluator& ev, const NodeSet& targets, const NodeSet& s) {
  if (targets.empty()) return 0.0;
  Matrix h = gcn_forward(*ev.model, *ev.g, apply_tau(*ev.x, s, ev.eps));
  int miss = 0;
  for (int t : targets.members) {
    const double* row = h.row(t);
    int arg = 0;
    for (int c = 1; c < h.cols; ++c)
      if (row[c] > row[arg]) arg = c;
    if (arg != (*ev.y)[t]) ++miss;
  }
  return static_cast<double>(miss) / targets.members.size();
}

double monotonicity_violation_fraction(const VulnEvaluator& ev, const NodeSet& targets,
                                       const NodeSet& pool) {
  const int p = static_cast<int>(pool.members.size());
  if (p > 15) throw std::runtime_error("monotonicity oracle: pool cap is 15");
  const std::uint32_t total = 1u << p;

  // g for every target under every subset, one forward per subset.
  std::vector<std::vector<char>> g_of(total);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t mask = 0; mask < static_cast<std::int64_t>(total); ++mask) {
    Matrix h = gcn_forward(*ev.model, *ev.g,
                           apply_tau(*ev.x, subset_of_pool(pool, static_cast<std::uint32_t>(mask)),
                                     ev.eps));
    std::vector<char> miss(targets.members.size());
    for (std::size_t t = 0; t < targets.members.size(); ++t) {
      const double* row = h.row(targets.members[t]);
      int arg = 0;
      for (int c = 1; c < h.cols; ++c)
        if (row[c] > row[arg]) arg = c;
      miss[t] = arg != (*ev.y)[targets.members[t]];
    }
    g_of[mask] = std::move(miss);
  }

  long long pairs = 0, violations = 0;
  for (std::uint32_t s = 1; s < total; ++s) {
    // proper submasks of s, down to and including the empty set
    for (std::uint32_t t = (s - 1) & s;; t = (t - 1) & s) {
      for (std::size_t k = 0; k < targets.members.size(); ++k) {
        ++pairs;
        if (g_of[t][k] > g_of[s][k]) ++violations;
      }
      if (t == 0) break;
    }
  }
  return pairs == 0 ? 0.0 : static_cast<double>(violations) / pairs;
}

Lemma2Result lemma2_identity_check(const std::vector<SetFamily>& basic_families,
                                   const NodeSet& s) {
  const int n = static_cast<int>(basic_families.size());
  if (n == 0) throw std::invalid_argument("lemma2_identity_check: no families");
  for (const auto& b : basic_families) {
    if (b.ground_size != n)
      throw std::invalid_argument("lemma2_identity_check: family ground size != N");
    for (std::uint32_t m : b.sets)
      if (std::popcount(m) != 1)
        throw std::invalid_argument(
            "lemma2_identity_check: families must be empty or all-singleton");
  }
  std::uint32_t s_mask = 0;
  for (int v : s.members) {
    if (v < 0 || v >= n) throw std::invalid_argument("lemma2_identity_check: S out of range");
    s_mask |= 1u << v;
  }

  int lhs_count = 0;
  for (const auto& b : basic_families) {
    if (b.sets.empty()) {
      ++lhs_count;  // empty family: misclassified under every attack set
      continue;
    }
    for (std::uint32_t m : b.sets)
      if (m & s_mask) {
        ++lhs_count;
        break;
      }
  }

  std::uint32_t covered = 0;  // union over i in S of e(i) = {j : {i} in B_j}
  int empties = 0;
  for (int j = 0; j < n; ++j) {
    const auto& b = basic_families[j];
    if (b.sets.empty()) {
      ++empties;
      continue;
    }
    for (std::uint32_t m : b.sets)
      if (m & s_mask) {
        covered |= 1u << j;
        break;
      }
  }
  const int rhs_count = std::popcount(covered) + empties;

  Lemma2Result res;
  res.lhs = static_cast<double>(lhs_count) / n;
  res.rhs = static_cast<double>(rhs_count) / n;
  res.equal = lhs_count == rhs_count;
  return res;
}

DiminishProfile diminishing_return_profile(const VulnEvaluator& ev, const std::vector<int>& order,
                                           const std::vector<int>& r_values,
                                           const NodeSet& targets) {
  DiminishProfile prof;
  prof.r_values = r_values;
  int max_r = 0;
  for (int r : r_values) {
    if (r < 0 || r > static_cast<int>(order.size()))
      throw std::invalid_argument("diminishing_return_profile: budget exceeds pick order");
    max_r = std::max(max_r, r);
  }

  const int n = ev.g->n;
  // h over every prefix length 0..max_r
  std::vector<double> h_prefix(max_r + 1);
  for (int t = 0; t <= max_r; ++t) {
    h_prefix[t] = misclassification_rate(
        ev, targets, make_node_set({order.begin(), order.begin() + t}, n));
  }
  for (int r : r_values) prof.h.push_back(h_prefix[r]);

  // Largest [h(T+v)-h(T)] - [h(S+v)-h(S)] over prefixes S of T with v the
  // pick after T; positive values are observed submodularity violations.
  double worst = 0.0;
  for (int t = 0; t + 1 <= max_r; ++t) {
    const int v = order[t];
    const double gain_t = h_prefix[t + 1] - h_prefix[t];
    for (int s = 0; s < t; ++s) {
      std::vector<int> ids(order.begin(), order.begin() + s);
      ids.push_back(v);
      const double h_sv = misclassification_rate(ev, targets, make_node_set(std::move(ids), n));
      worst = std::max(worst, gain_t - (h_sv - h_prefix[s]));
    }
  }
  prof.max_violation = worst;
  return prof;
}

AssumptionStats assumption_statistics(const std::vector<SetFamily>& families) {
  AssumptionStats stats;
  if (families.empty()) return stats;
  const int ground = families[0].ground_size;
  for (const auto& f : families)
    if (f.ground_size != ground)
      throw std::invalid_argument("assumption_statistics: mismatched ground sizes");

  std::vector<std::uint32_t> shared;
  for (const auto& f : families)
    for (std::uint32_t s : f.sets)
      if (std::popcount(s) > 1) shared.push_back(s);
  std::sort(shared.begin(), shared.end());
  shared.erase(std::unique(shared.begin(), shared.end()), shared.end());
  if (shared.empty()) return stats;

  double sum_b = 0.0, sum_p = 0.0;
  double min_b = 1e18, min_p = 1e18;
  for (std::uint32_t s : shared) {
    int b = 0, with_singleton = 0;
    for (const auto& f : families) {
      if (!f.contains(s)) continue;
      ++b;
      bool has_singleton = false;
      for (int t = 0; t < ground && !has_singleton; ++t)
        if ((s & (1u << t)) && f.contains(1u << t)) has_singleton = true;
      if (has_singleton) ++with_singleton;
    }
    const double p = b == 0 ? 0.0 : static_cast<double>(with_singleton) / b;
    sum_b += b;
    sum_p += p;
    min_b = std::min(min_b, static_cast<double>(b));
    min_p = std::min(min_p, p);
  }
  stats.shared_sets = static_cast<int>(shared.size());
  stats.min_b = min_b;
  stats.mean_b = sum_b / shared.size();
  stats.min_p = min_p;
  stats.mean_p = sum_p / shared.size();
  return stats;
}

}  // namespace gattack
