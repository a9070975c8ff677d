#include "negdep/concentration.hpp"

#include <algorithm>
#include <cmath>

namespace negdep {

double theorem_bound(int n, const Rational& t, bool monotone) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "theorem_bound needs n >= 1");
  if (sgn(t) < 0) throw Error(ErrorCode::InvalidArgument, "theorem_bound needs t >= 0");
  const Rational exponent = monotone ? Rational(2 * t * t / n) : Rational(t * t / (2 * n));
  return std::exp(-to_double(exponent));
}

Rational exact_tail(const ExplicitMeasure& m, const TestFunction& f, const Rational& t, TailSide side) {
  const Rational mu = expectation(m, f);
  const Rational threshold = side == TailSide::Upper ? Rational(mu + t) : Rational(mu - t);
  Rational total = 0;
  for (const auto& atom : m.atoms()) {
    const Rational& v = f(atom.x);
    if (side == TailSide::Upper ? v >= threshold : v <= threshold) total += atom.p;
  }
  return total;
}

bool within_tolerance(double value, double bound) { return value <= bound * (1.0 + kRelativeTolerance); }

TailReport verify_theorem(const ExplicitMeasure& m, const TestFunction& f, std::vector<Rational> t_grid) {
  TailReport report;
  report.n = m.n();
  report.mu = expectation(m, f);
  report.monotone = f.declared_monotone();
  std::sort(t_grid.begin(), t_grid.end());
  t_grid.erase(std::unique(t_grid.begin(), t_grid.end()), t_grid.end());
  for (auto& t : t_grid) {
    if (sgn(t) < 0) throw Error(ErrorCode::InvalidArgument, "t must be nonnegative");
    TailRow row;
    row.t = t;
    row.upper_exact = exact_tail(m, f, t, TailSide::Upper);
    row.lower_exact = exact_tail(m, f, t, TailSide::Lower);
    row.bound = theorem_bound(m.n(), t, false);
    double applicable = row.bound;
    if (report.monotone) {
      row.monotone_bound = theorem_bound(m.n(), t, true);
      applicable = *row.monotone_bound;
    }
    row.pass = within_tolerance(to_double(row.upper_exact), applicable) &&
               within_tolerance(to_double(row.lower_exact), applicable);
    if (!row.pass && report.verdict) {
      report.verdict = false;
      report.offending_row = report.rows.size();
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::vector<Rational> t_grid_range(const Rational& from, const Rational& step, const Rational& to) {
  if (sgn(step) <= 0) throw Error(ErrorCode::InvalidArgument, "grid step must be positive");
  std::vector<Rational> grid;
  for (Rational t = from; t <= to; t += step) grid.push_back(t);
  return grid;
}

std::vector<Rational> default_t_grid(const TestFunction& f) {
  return t_grid_range(0, Rational(1, 4), f.max_value() - f.min_value());
}

namespace {

const MartingaleNode& node_at(const MartingaleTree& tree, int node) {
  if (node < 0 || node >= static_cast<int>(tree.nodes.size())) {
    throw Error(ErrorCode::InvalidArgument, "node id " + std::to_string(node) + " out of range");
  }
  return tree.nodes[static_cast<std::size_t>(node)];
}

}  // namespace

double node_exponential_moment(const MartingaleTree& tree, int node, double lambda) {
  const MartingaleNode& v = node_at(tree, node);
  if (v.is_leaf()) throw Error(ErrorCode::NodeIsLeaf, "node " + std::to_string(node) + " is a leaf");
  double total = 0.0;
  if (v.y0) total += to_double(v.p0) * std::exp(lambda * to_double(*v.y0 - v.y));
  if (v.y1) total += to_double(v.p1) * std::exp(lambda * to_double(*v.y1 - v.y));
  return total;
}

double node_hoeffding_bound(const MartingaleTree& tree, int node, double lambda) {
  const MartingaleNode& v = node_at(tree, node);
  const double width = to_double(v.beta - v.alpha);
  return std::exp(lambda * lambda * width * width / 8.0);
}

double chain_exponential_moment(const MartingaleTree& tree, double lambda) {
  const Rational& y0 = tree.root().y;
  double total = 0.0;
  for (const auto& node : tree.nodes) {
    if (node.is_leaf()) total += to_double(node.probability) * std::exp(lambda * to_double(node.y - y0));
  }
  return total;
}

double chain_bound(int n, double lambda, bool monotone) {
  return std::exp(n * lambda * lambda / (monotone ? 8.0 : 2.0));
}

double leaf_sum_moment(const ExplicitMeasure& m, const TestFunction& f, double lambda) {
  const Rational mu = expectation(m, f);
  double total = 0.0;
  for (const auto& atom : m.atoms()) total += to_double(atom.p) * std::exp(lambda * to_double(f(atom.x) - mu));
  return total;
}

double markov_bound(int n, double lambda, double t, bool monotone) {
  return std::exp(n * lambda * lambda / (monotone ? 8.0 : 2.0) - lambda * t);
}

double optimal_lambda(int n, double t, bool monotone) { return (monotone ? 4.0 : 1.0) * t / n; }

}  // namespace negdep
