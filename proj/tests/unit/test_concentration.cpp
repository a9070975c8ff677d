#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "negdep/concentration.hpp"
#include "negdep/dependence.hpp"
#include "negdep/zoo.hpp"

using namespace negdep;

namespace {

Rational R(const char* s) { return parse_rational(s); }

const std::vector<double> kLambdas{2, -2, 1, -1, 0.5, -0.5, 0.1, -0.1};

}  // namespace

TEST(TheoremBound, Examples) {
  EXPECT_EQ(theorem_bound(5, 0, false), 1.0);
  EXPECT_EQ(theorem_bound(5, 0, true), 1.0);
  EXPECT_NEAR(theorem_bound(3, R("1/4"), true), std::exp(-1.0 / 24), 1e-15);
  EXPECT_NEAR(theorem_bound(3, R("1/4"), true), 0.959189, 1e-6);
  EXPECT_NEAR(theorem_bound(3, R("1/4"), false), std::exp(-1.0 / 96), 1e-15);
  EXPECT_NEAR(theorem_bound(3, R("1/4"), false), 0.989637, 1e-6);
}

TEST(ExactTail, Examples) {
  const auto m = family_nand(3);
  const auto f = TestFunction::sum(3);
  EXPECT_EQ(exact_tail(m, f, R("1/4"), TailSide::Upper), R("3/4"));
  EXPECT_EQ(exact_tail(m, f, R("1/4"), TailSide::Lower), R("1/4"));
  const auto c = TestFunction::constant(3, R("2"));
  EXPECT_EQ(exact_tail(m, c, R("1/4"), TailSide::Upper), 0);
  EXPECT_EQ(exact_tail(m, c, R("1/4"), TailSide::Lower), 0);
  // Closed comparisons: t = 0 counts atoms equal to the mean.
  EXPECT_EQ(exact_tail(m, c, 0, TailSide::Upper), 1);
  EXPECT_THROW(exact_tail(m, TestFunction::sum(2), 0, TailSide::Upper), Error);
}

TEST(VerifyTheorem, Examples) {
  const auto r = verify_theorem(family_nand(3), TestFunction::sum(3), {R("1"), R("0"), R("1/2"), R("1/4")});
  EXPECT_TRUE(r.verdict);
  ASSERT_EQ(r.rows.size(), 4u);
  EXPECT_EQ(r.rows[1].t, R("1/4"));  // sorted
  EXPECT_EQ(r.rows[1].upper_exact, R("3/4"));
  EXPECT_TRUE(r.rows[1].monotone_bound.has_value());
  EXPECT_LE(0.75, *r.rows[1].monotone_bound);
  EXPECT_EQ(r.mu, R("7/4"));

  const auto coins = verify_theorem(family_from_spec("indep:1/2,1/2,1/2,1/2"), TestFunction::sum(4), {R("2")});
  EXPECT_EQ(coins.rows[0].upper_exact, R("1/16"));
  EXPECT_TRUE(coins.verdict);

  const auto flat = verify_theorem(family_nand(4), TestFunction::constant(4, 1), {R("1/2"), R("3")});
  for (const auto& row : flat.rows) {
    EXPECT_EQ(row.upper_exact, 0);
    EXPECT_EQ(row.lower_exact, 0);
  }
}

TEST(VerifyTheorem, FlagsOffendingRow) {
  // A positively correlated pair breaks the monotone bound at t = 1:
  // Pr[f >= 2] = 1/2 > e^{-1}.
  const auto r = verify_theorem(family_pos_pair(), TestFunction::sum(2), {0, 1});
  EXPECT_FALSE(r.verdict);
  ASSERT_TRUE(r.offending_row);
  EXPECT_EQ(r.rows[*r.offending_row].t, 1);
}

TEST(Grid, Defaults) {
  const auto g = default_t_grid(TestFunction::sum(2));
  EXPECT_EQ(g, (std::vector<Rational>{0, R("1/4"), R("1/2"), R("3/4"), 1, R("5/4"), R("3/2"), R("7/4"), 2}));
  EXPECT_EQ(t_grid_range(0, R("1/4"), 2).size(), 9u);
  EXPECT_THROW(t_grid_range(0, 0, 1), Error);
}

TEST(NodeMoment, Examples) {
  const auto tree = build_adaptive_tree(family_nand(3), TestFunction::sum(3));
  EXPECT_NEAR(node_exponential_moment(tree, 0, 2.0), std::cosh(0.5), 1e-14);
  EXPECT_LE(node_exponential_moment(tree, 0, 2.0), std::exp(0.5));
  EXPECT_NEAR(node_exponential_moment(tree, 0, 0.0), 1.0, 1e-15);
  EXPECT_THROW(node_exponential_moment(tree, tree.leaves().front(), 1.0), Error);
}

TEST(NodeMoment, TwoPointExample) {
  // Fair split with steps +-1/2: cosh(1/2) <= e^{1/8}.
  const auto tree = build_adaptive_tree(family_from_spec("indep:1/2"), TestFunction::sum(1));
  EXPECT_NEAR(node_exponential_moment(tree, 0, 1.0), std::cosh(0.5), 1e-15);
  EXPECT_NEAR(node_hoeffding_bound(tree, 0, 1.0), std::exp(1.0 / 8), 1e-15);
  EXPECT_TRUE(within_tolerance(node_exponential_moment(tree, 0, 1.0), node_hoeffding_bound(tree, 0, 1.0)));
}

TEST(ChainMoment, Examples) {
  const auto m = family_nand(3);
  const auto f = TestFunction::sum(3);
  const auto tree = build_adaptive_tree(m, f);
  EXPECT_NEAR(chain_exponential_moment(tree, 0.0), 1.0, 1e-15);
  EXPECT_LE(chain_exponential_moment(tree, 1.0), std::exp(3.0 / 8));
  // Four atoms: f - mu in {-3/4, 1/4, 1/4, 1/4}.
  const double direct = 0.25 * std::exp(-0.75) + 0.75 * std::exp(0.25);
  EXPECT_NEAR(chain_exponential_moment(tree, 1.0), direct, 1e-14);
}

TEST(Markov, OptimalLambdaReproducesTheoremBound) {
  for (int n : {1, 3, 7, 12}) {
    for (const char* ts : {"1/4", "1", "5/2", "4"}) {
      const Rational t = R(ts);
      const double td = to_double(t);
      EXPECT_NEAR(markov_bound(n, optimal_lambda(n, td, false), td, false), theorem_bound(n, t, false), 1e-14);
      EXPECT_NEAR(markov_bound(n, optimal_lambda(n, td, true), td, true), theorem_bound(n, t, true), 1e-14);
      // The optimum over a fine grid of lambda is not beaten.
      const double best = markov_bound(n, optimal_lambda(n, td, false), td, false);
      for (double lambda = 0.001; lambda < 5; lambda += 0.001) {
        EXPECT_GE(markov_bound(n, lambda, td, false), best * (1 - 1e-12));
      }
    }
  }
}

TEST(Properties, ZooProofChain) {
  std::mt19937_64 rng(31);
  for (const auto& entry : measure_zoo()) {
    if (!entry.expected_negative_regression || entry.measure.n() > 6) continue;
    const auto& m = entry.measure;
    for (int trial = 0; trial < 4; ++trial) {
      const bool mono = trial % 2 == 1;
      const auto f = TestFunction::random_lipschitz(m.n(), rng, mono);
      const auto tree = build_adaptive_tree(m, f);
      for (double lambda : kLambdas) {
        for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
          if (tree.nodes[id].is_leaf()) continue;
          const int node = static_cast<int>(id);
          EXPECT_TRUE(within_tolerance(node_exponential_moment(tree, node, lambda),
                                       node_hoeffding_bound(tree, node, lambda)));
        }
        const double chain = chain_exponential_moment(tree, lambda);
        EXPECT_TRUE(within_tolerance(chain, chain_bound(m.n(), lambda, mono))) << entry.name;
        const double leaf = leaf_sum_moment(m, f, lambda);
        EXPECT_LE(std::abs(chain - leaf), 1e-12 * std::abs(leaf)) << entry.name;
      }
      const auto report = verify_theorem(m, f, default_t_grid(f));
      EXPECT_TRUE(report.verdict) << entry.name;
      for (std::size_t k = 1; k < report.rows.size(); ++k) {
        EXPECT_LE(report.rows[k].upper_exact, report.rows[k - 1].upper_exact);
      }
    }
  }
}

TEST(Properties, MonotoneBoundOnSum) {
  for (const auto& entry : measure_zoo()) {
    if (!entry.expected_negative_regression) continue;
    const int n = entry.measure.n();
    std::vector<Rational> grid;
    for (int k = 0; k <= 4 * n; ++k) grid.push_back(ratio(k, 4));
    EXPECT_TRUE(verify_theorem(entry.measure, TestFunction::sum(n), grid).verdict) << entry.name;
  }
}
