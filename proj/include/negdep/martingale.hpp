#pragma once

// Doob martingales Y_k = E[f | revealed variables] over explicit decision
// trees. The adaptive tree chooses the next variable with pick_index, which
// keeps every step inside an interval of width 2 (1 for monotone f) whenever
// the measure has negative regression.

#include <optional>
#include <vector>

#include "negdep/measure.hpp"

namespace negdep {

struct PickResult {
  int index = 0;
  bool deterministic = false;
  // Sum over other unrevealed l of E[X_l | ., X_i = 0] - E[X_l | ., X_i = 1].
  std::optional<Rational> influence_sum;
};

// Minimum unrevealed index whose variable is deterministic under `revealed`
// or whose influence sum is at most 1. Throws NoEligibleIndex if none exists.
PickResult pick_index(const ExplicitMeasure& m, const Assignment& revealed);

struct PickLemmaEntry {
  int index = 0;
  Rational pi;
  // Var[X_i | .] + sum_j Cov[X_i, X_j | .], from second moments directly.
  Rational quantity;
  std::optional<Rational> influence_sum;
};

struct PickLemmaReport {
  std::vector<PickLemmaEntry> entries;
  bool some_nonnegative = false;
  // quantity / (pi (1 - pi)) == 1 - influence_sum for every random X_i.
  bool identity_holds = false;
};

// Throws LemmaViolated if no entry is nonnegative or the identity fails.
PickLemmaReport verify_pick_lemma(const ExplicitMeasure& m, const Assignment& revealed);

struct MartingaleNode {
  int parent = -1;
  int depth = 0;
  Assignment revealed;
  Rational probability;
  Rational y;
  // 0 at leaves.
  int pick = 0;
  std::optional<PickResult> pick_info;
  // Pr[X_pick = c | node]; children[c] is -1 for a zero-probability branch.
  Rational p0, p1;
  int children[2] = {-1, -1};
  std::optional<Rational> y0, y1;
  // Bounds on Y_{k+1} - Y_k at this node; (0, 0) with a single live branch.
  Rational alpha, beta;

  bool is_leaf() const { return pick == 0; }
  bool two_branches() const { return children[0] >= 0 && children[1] >= 0; }
};

struct MartingaleTree {
  int n = 0;
  bool adaptive = false;
  bool monotone_f = false;
  // Preorder; nodes[0] is the root.
  std::vector<MartingaleNode> nodes;

  const MartingaleNode& root() const { return nodes.front(); }
  std::vector<int> leaves() const;
};

class IntervalViolation : public Error {
 public:
  IntervalViolation(MartingaleNode node, const Rational& limit);
  const MartingaleNode& node() const { return node_; }

 private:
  MartingaleNode node_;
};

// Requires f to be 1-Lipschitz (always true for TestFunction). Throws
// IntervalViolation when a gap exceeds 2 (1 for monotone f), which certifies
// that the measure is not negatively regressed.
MartingaleTree build_adaptive_tree(const ExplicitMeasure& m, const TestFunction& f);

// `order` is a permutation of 1..n.
MartingaleTree fixed_order_tree(const ExplicitMeasure& m, const TestFunction& f, const std::vector<int>& order);

enum class StepMode {
  // max over nodes of |y^c - y|
  Increment,
  // max over nodes of beta - alpha
  Gap,
};

Rational max_step(const MartingaleTree& tree, StepMode mode);
// Gap for adaptive trees, Increment otherwise.
Rational max_step(const MartingaleTree& tree);

struct TreeCheck {
  bool martingale = true;
  bool leaf_values = true;
  bool depth_and_indices = true;
  bool gaps_bounded = true;
  std::optional<int> first_bad_node;

  bool ok() const { return martingale && leaf_values && depth_and_indices && gaps_bounded; }
};

// Re-verifies tree invariants. gap_limit applies to every node when given.
TreeCheck verify_tree(const MartingaleTree& tree, const TestFunction& f, std::optional<Rational> gap_limit);

}  // namespace negdep
