#include "negdep/martingale.hpp"

#include <algorithm>

namespace negdep {

namespace {

using AtomView = std::vector<const Atom*>;

AtomView matching(const ExplicitMeasure& m, const Assignment& revealed) {
  AtomView out;
  for (const auto& atom : m.atoms()) {
    if (revealed.matches(atom.x)) out.push_back(&atom);
  }
  return out;
}

Rational mass_of(const AtomView& atoms) {
  Rational total = 0;
  for (const Atom* a : atoms) total += a->p;
  return total;
}

struct SplitMoments {
  Rational mass[2];
  // sums[c][l] = sum of p over atoms with x_i = c and x_l = 1.
  std::vector<Rational> sums[2];
};

SplitMoments split_on(const AtomView& atoms, int i, int n) {
  SplitMoments s;
  s.sums[0].assign(static_cast<std::size_t>(n) + 1, Rational(0));
  s.sums[1].assign(static_cast<std::size_t>(n) + 1, Rational(0));
  for (const Atom* a : atoms) {
    const int c = test_var(a->x, i) ? 1 : 0;
    s.mass[c] += a->p;
    for (int l = 1; l <= n; ++l) {
      if (test_var(a->x, l)) s.sums[c][static_cast<std::size_t>(l)] += a->p;
    }
  }
  return s;
}

// Influence of X_i on the other unrevealed variables; requires both branches
// to have positive mass.
Rational influence_of(const SplitMoments& s, int i, Bits unrevealed, int n) {
  Rational total = 0;
  for (int l = 1; l <= n; ++l) {
    if (l == i || !test_var(unrevealed, l)) continue;
    total += s.sums[0][static_cast<std::size_t>(l)] / s.mass[0] - s.sums[1][static_cast<std::size_t>(l)] / s.mass[1];
  }
  return total;
}

PickResult pick_from(const AtomView& atoms, Bits unrevealed, int n) {
  for (int i = 1; i <= n; ++i) {
    if (!test_var(unrevealed, i)) continue;
    const SplitMoments s = split_on(atoms, i, n);
    if (sgn(s.mass[0]) == 0 || sgn(s.mass[1]) == 0) return PickResult{i, true, std::nullopt};
    Rational influence = influence_of(s, i, unrevealed, n);
    if (influence <= 1) return PickResult{i, false, std::move(influence)};
  }
  throw Error(ErrorCode::NoEligibleIndex, "no unrevealed variable is deterministic or has influence sum <= 1");
}

void require_positive(const ExplicitMeasure& m, const Assignment& revealed) {
  revealed.validate(m.n());
  if (static_cast<int>(revealed.size()) >= m.n()) {
    throw Error(ErrorCode::InvalidArgument, "every variable is already revealed");
  }
  if (sgn(m.probability(revealed)) == 0) {
    throw Error(ErrorCode::ZeroProbabilityEvent, "revealed assignment has probability 0");
  }
}

class TreeBuilder {
 public:
  TreeBuilder(const ExplicitMeasure& m, const TestFunction& f, const std::vector<int>* order)
      : m_(m), f_(f), order_(order) {
    tree_.n = m.n();
    tree_.adaptive = order == nullptr;
    tree_.monotone_f = f.declared_monotone();
  }

  MartingaleTree build() {
    AtomView all;
    for (const auto& atom : m_.atoms()) all.push_back(&atom);
    grow(all, Assignment{}, -1, Rational(1));
    return std::move(tree_);
  }

 private:
  int grow(const AtomView& atoms, const Assignment& revealed, int parent, const Rational& probability) {
    const int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    {
      MartingaleNode& node = tree_.nodes.back();
      node.parent = parent;
      node.depth = static_cast<int>(revealed.size());
      node.revealed = revealed;
      node.probability = probability;
      const Rational mass = mass_of(atoms);
      Rational weighted = 0;
      for (const Atom* a : atoms) weighted += a->p * f_(a->x);
      node.y = weighted / mass;
    }
    const int n = m_.n();
    if (static_cast<int>(revealed.size()) == n) return id;

    int pick = 0;
    std::optional<PickResult> info;
    if (order_ != nullptr) {
      pick = (*order_)[revealed.size()];
    } else {
      info = pick_from(atoms, full_mask(n) & ~revealed.mask(), n);
      pick = info->index;
    }
    AtomView branch[2];
    for (const Atom* a : atoms) branch[test_var(a->x, pick) ? 1 : 0].push_back(a);
    const Rational mass = mass_of(atoms);
    const Rational p1 = mass_of(branch[1]) / mass;
    {
      MartingaleNode& node = tree_.nodes[static_cast<std::size_t>(id)];
      node.pick = pick;
      node.pick_info = info;
      node.p1 = p1;
      node.p0 = 1 - p1;
    }
    for (int c = 0; c < 2; ++c) {
      if (branch[c].empty()) continue;
      const Rational branch_p = c == 1 ? p1 : Rational(1 - p1);
      const int child = grow(branch[c], revealed.with(pick, c), id, probability * branch_p);
      MartingaleNode& node = tree_.nodes[static_cast<std::size_t>(id)];
      node.children[c] = child;
      (c == 1 ? node.y1 : node.y0) = tree_.nodes[static_cast<std::size_t>(child)].y;
    }
    MartingaleNode& node = tree_.nodes[static_cast<std::size_t>(id)];
    if (node.two_branches()) {
      const Rational d0 = *node.y0 - node.y;
      const Rational d1 = *node.y1 - node.y;
      node.alpha = d0 < d1 ? d0 : d1;
      node.beta = d0 < d1 ? d1 : d0;
    } else {
      node.alpha = 0;
      node.beta = 0;
    }
    if (tree_.adaptive) {
      const Rational limit = f_.declared_monotone() ? 1 : 2;
      if (node.beta - node.alpha > limit) throw IntervalViolation(node, limit);
    }
    return id;
  }

  const ExplicitMeasure& m_;
  const TestFunction& f_;
  const std::vector<int>* order_;
  MartingaleTree tree_;
};

void check_tree_inputs(const ExplicitMeasure& m, const TestFunction& f) {
  if (f.n() != m.n()) {
    throw Error(ErrorCode::DimensionMismatch, "f has n = " + std::to_string(f.n()) + ", measure has n = " +
                                                  std::to_string(m.n()));
  }
  if (f.declared_lipschitz() != 1) throw Error(ErrorCode::InvalidArgument, "only 1-Lipschitz f is supported");
  require_within_cap(m.n(), caps::kTree, "martingale tree");
}

}  // namespace

PickResult pick_index(const ExplicitMeasure& m, const Assignment& revealed) {
  require_positive(m, revealed);
  return pick_from(matching(m, revealed), full_mask(m.n()) & ~revealed.mask(), m.n());
}

PickLemmaReport verify_pick_lemma(const ExplicitMeasure& m, const Assignment& revealed) {
  require_positive(m, revealed);
  const int n = m.n();
  const AtomView atoms = matching(m, revealed);
  const Rational mass = mass_of(atoms);
  const Bits unrevealed = full_mask(n) & ~revealed.mask();
  std::vector<Rational> mean(static_cast<std::size_t>(n) + 1);
  for (const Atom* a : atoms) {
    for (int l = 1; l <= n; ++l) {
      if (test_var(a->x, l)) mean[static_cast<std::size_t>(l)] += a->p;
    }
  }
  for (auto& v : mean) v /= mass;

  PickLemmaReport report;
  report.identity_holds = true;
  for (int i = 1; i <= n; ++i) {
    if (!test_var(unrevealed, i)) continue;
    PickLemmaEntry entry;
    entry.index = i;
    entry.pi = mean[static_cast<std::size_t>(i)];
    entry.quantity = entry.pi * (1 - entry.pi);
    for (int j = 1; j <= n; ++j) {
      if (j == i || !test_var(unrevealed, j)) continue;
      Rational both = 0;
      for (const Atom* a : atoms) {
        if (test_var(a->x, i) && test_var(a->x, j)) both += a->p;
      }
      entry.quantity += both / mass - entry.pi * mean[static_cast<std::size_t>(j)];
    }
    if (sgn(entry.quantity) >= 0) report.some_nonnegative = true;
    if (sgn(entry.pi) > 0 && entry.pi < 1) {
      const SplitMoments s = split_on(atoms, i, n);
      entry.influence_sum = influence_of(s, i, unrevealed, n);
      if (entry.quantity / (entry.pi * (1 - entry.pi)) != 1 - *entry.influence_sum) report.identity_holds = false;
    }
    report.entries.push_back(std::move(entry));
  }
  if (!report.some_nonnegative || !report.identity_holds) {
    throw Error(ErrorCode::LemmaViolated, report.some_nonnegative ? "variance identity does not match influence sums"
                                                                  : "every variance term is negative");
  }
  return report;
}

std::vector<int> MartingaleTree::leaves() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].is_leaf()) out.push_back(static_cast<int>(i));
  }
  return out;
}

IntervalViolation::IntervalViolation(MartingaleNode node, const Rational& limit)
    : Error(ErrorCode::IntervalViolation, "node revealing " + std::to_string(node.revealed.size()) +
                                              " variables has gap " + pretty_rational(node.beta - node.alpha) +
                                              " > " + pretty_rational(limit)),
      node_(std::move(node)) {}

MartingaleTree build_adaptive_tree(const ExplicitMeasure& m, const TestFunction& f) {
  check_tree_inputs(m, f);
  return TreeBuilder(m, f, nullptr).build();
}

MartingaleTree fixed_order_tree(const ExplicitMeasure& m, const TestFunction& f, const std::vector<int>& order) {
  check_tree_inputs(m, f);
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  bool permutation = static_cast<int>(sorted.size()) == m.n();
  for (std::size_t k = 0; permutation && k < sorted.size(); ++k) permutation = sorted[k] == static_cast<int>(k) + 1;
  if (!permutation) throw Error(ErrorCode::InvalidArgument, "order must be a permutation of 1..n");
  return TreeBuilder(m, f, &order).build();
}

Rational max_step(const MartingaleTree& tree, StepMode mode) {
  Rational best = 0;
  for (const auto& node : tree.nodes) {
    if (node.is_leaf()) continue;
    if (mode == StepMode::Gap) {
      best = std::max(best, Rational(node.beta - node.alpha));
      continue;
    }
    if (node.y0) best = std::max(best, Rational(abs(*node.y0 - node.y)));
    if (node.y1) best = std::max(best, Rational(abs(*node.y1 - node.y)));
  }
  return best;
}

Rational max_step(const MartingaleTree& tree) {
  return max_step(tree, tree.adaptive ? StepMode::Gap : StepMode::Increment);
}

TreeCheck verify_tree(const MartingaleTree& tree, const TestFunction& f, std::optional<Rational> gap_limit) {
  TreeCheck check;
  auto flag = [&check](bool& field, int id) {
    field = false;
    if (!check.first_bad_node) check.first_bad_node = id;
  };
  for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
    const auto& node = tree.nodes[id];
    const int nid = static_cast<int>(id);
    if (node.depth != static_cast<int>(node.revealed.size())) flag(check.depth_and_indices, nid);
    if (node.is_leaf()) {
      if (node.depth != tree.n) flag(check.depth_and_indices, nid);
      if (node.y != f(node.revealed.value_bits())) flag(check.leaf_values, nid);
      continue;
    }
    if (test_var(node.revealed.mask(), node.pick)) flag(check.depth_and_indices, nid);
    Rational expected = 0;
    for (int c = 0; c < 2; ++c) {
      const int child = node.children[c];
      const Rational& pc = c == 1 ? node.p1 : node.p0;
      if (child < 0) {
        if (sgn(pc) != 0) flag(check.martingale, nid);
        continue;
      }
      const auto& kid = tree.nodes[static_cast<std::size_t>(child)];
      if (kid.parent != nid || !(kid.revealed == node.revealed.with(node.pick, c))) flag(check.depth_and_indices, nid);
      expected += pc * kid.y;
    }
    if (expected != node.y) flag(check.martingale, nid);
    if (gap_limit && node.beta - node.alpha > *gap_limit) flag(check.gaps_bounded, nid);
  }
  return check;
}

}  // namespace negdep
