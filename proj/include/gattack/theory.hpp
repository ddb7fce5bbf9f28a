#pragma once

#include <cstdint>
#include <vector>

#include "gattack/gcn.hpp"
#include "gattack/graph.hpp"

namespace gattack {

// Family of distinct subsets of {0..ground_size-1}, each set a bitmask,
// stored sorted ascending (canonical). Ground sizes stay small; everything
// here is exhaustive by design.
struct SetFamily {
  int ground_size = 0;
  std::vector<std::uint32_t> sets;

  bool contains(std::uint32_t mask) const;
};

SetFamily make_set_family(int ground_size, std::vector<std::uint32_t> sets);

// Upward closure: every superset (within the ground set) of a member.
SetFamily upward_closure(const SetFamily& f);
bool is_upward_closed(const SetFamily& f);

// Decides misclassification of single target nodes under attack sets, by a
// full forward pass of the model on the perturbed features.
struct VulnEvaluator {
  const GcnModel* model = nullptr;
  const Graph* g = nullptr;
  const Matrix* x = nullptr;
  const std::vector<int>* y = nullptr;
  Epsilon eps;
};

// 1 iff `target` is misclassified when the set s is perturbed.
int vulnerable_function(const VulnEvaluator& ev, int target, const NodeSet& s);

// Exhaustive vulnerable set of `target` over subsets of pool (|pool| <= 15).
// Ground elements are pool indices: bit t stands for pool.members[t].
SetFamily enumerate_vulnerable_set(const VulnEvaluator& ev, int target, const NodeSet& pool);

// The unique inclusion-minimal core of an upward-closed family (empty when
// the empty set is a member). Verifies the three defining conditions before
// returning; throws on a non-monotone input.
SetFamily basic_vulnerable_set(const SetFamily& a);

// Mean of the vulnerable function over targets.
double misclassification_rate(const VulnEvaluator& ev, const NodeSet& targets, const NodeSet& s);

// Fraction of pairs T subset-of S (over subsets of pool) where the vulnerable
// function decreases, i.e. g(T)=1 but g(S)=0, per target, averaged.
double monotonicity_violation_fraction(const VulnEvaluator& ev, const NodeSet& targets,
                                       const NodeSet& pool);

struct Lemma2Result {
  double lhs = 0.0;  // misclassification rate reconstructed from the families
  double rhs = 0.0;  // coverage form: (|union of e(i), i in S| + #empty) / N
  bool equal = false;
};

// In the all-singleton regime (every family empty or all-singleton), the two
// computations must agree exactly. An empty family means "misclassified by
// every attack set, including the empty one".
Lemma2Result lemma2_identity_check(const std::vector<SetFamily>& basic_families, const NodeSet& s);

struct DiminishProfile {
  std::vector<int> r_values;
  std::vector<double> h;     // misclassification rate at each budget
  double max_violation = 0;  // max over observed triples of submodularity gap
};

// Misclassification rate along the prefixes of a pick order, plus the largest
// observed submodularity violation [h(T+v)-h(T)] - [h(S+v)-h(S)] over prefix
// pairs S subset-of T with v the pick after T.
DiminishProfile diminishing_return_profile(const VulnEvaluator& ev, const std::vector<int>& order,
                                           const std::vector<int>& r_values,
                                           const NodeSet& targets);

// Homophily / considerable-perturbation statistics of a collection of
// enumerated vulnerable families (ground elements = pool indices).
struct AssumptionStats {
  int shared_sets = 0;        // |union of A_i| members with |S| > 1
  double min_b = 0.0;         // min over those S of b(S) = #{i : S in A_i}
  double mean_b = 0.0;
  double min_p = 0.0;         // min over those S of p(S)
  double mean_p = 0.0;
};

AssumptionStats assumption_statistics(const std::vector<SetFamily>& families);

}  // namespace gattack
