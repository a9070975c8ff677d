#pragma once

// Tail bounds for 1-Lipschitz functions under negative regression, checked
// against exactly enumerated tails and the exponential moments of the
// adaptive martingale.

#include <optional>
#include <vector>

#include "negdep/martingale.hpp"
#include "negdep/measure.hpp"

namespace negdep {

inline constexpr double kRelativeTolerance = 1e-12;

enum class TailSide { Upper, Lower };

// exp(-t^2 / (2n)), or exp(-2 t^2 / n) for monotone f.
double theorem_bound(int n, const Rational& t, bool monotone);

// Pr[f >= mu + t] (Upper) or Pr[f <= mu - t] (Lower), exactly.
Rational exact_tail(const ExplicitMeasure& m, const TestFunction& f, const Rational& t, TailSide side);

struct TailRow {
  Rational t;
  Rational upper_exact;
  Rational lower_exact;
  double bound = 1.0;
  std::optional<double> monotone_bound;
  bool pass = true;
};

struct TailReport {
  int n = 0;
  Rational mu;
  bool monotone = false;
  std::vector<TailRow> rows;
  bool verdict = true;
  std::optional<std::size_t> offending_row;
};

// Rows sorted by t. A row passes when both exact tails are at most the
// applicable bound times (1 + 1e-12); the monotone bound applies when f is
// declared monotone.
TailReport verify_theorem(const ExplicitMeasure& m, const TestFunction& f, std::vector<Rational> t_grid);

// Quarter steps 0, 1/4, ..., up to max f - min f.
std::vector<Rational> default_t_grid(const TestFunction& f);
// from, from + step, ..., not exceeding to.
std::vector<Rational> t_grid_range(const Rational& from, const Rational& step, const Rational& to);

// E[exp(lambda (Y_{k+1} - Y_k)) | node]. Throws NodeIsLeaf at leaves.
double node_exponential_moment(const MartingaleTree& tree, int node, double lambda);

// exp(lambda^2 (beta - alpha)^2 / 8) at the node.
double node_hoeffding_bound(const MartingaleTree& tree, int node, double lambda);

// E[exp(lambda (Y_n - Y_0))], summed over the tree's leaves.
double chain_exponential_moment(const MartingaleTree& tree, double lambda);

// exp(n lambda^2 / 2), or exp(n lambda^2 / 8) for monotone f.
double chain_bound(int n, double lambda, bool monotone);

// sum over atoms of p(x) exp(lambda (f(x) - mu)), computed without the tree.
double leaf_sum_moment(const ExplicitMeasure& m, const TestFunction& f, double lambda);

// exp(n lambda^2 / 2 - lambda t) (or the monotone analogue): the Markov bound
// for a given lambda.
double markov_bound(int n, double lambda, double t, bool monotone);

// Minimiser of the Markov bound over lambda > 0: t/n, or 4t/n for monotone f.
double optimal_lambda(int n, double t, bool monotone);

bool within_tolerance(double value, double bound);

}  // namespace negdep
