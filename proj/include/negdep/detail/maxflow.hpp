#pragma once

// Dinic max-flow over exact rationals. Internal to the library: coupling and
// the negative-association closure search are its only callers.

#include <vector>

#include "negdep/core.hpp"

namespace negdep::detail {

class MaxFlow {
 public:
  explicit MaxFlow(int nodes);

  int add_node();
  // Returns the edge id; the paired reverse edge is id ^ 1.
  int add_edge(int from, int to, const Rational& capacity);

  // Routes `amount` along an edge before run(); callers keep conservation.
  void preload(int edge, const Rational& amount);

  Rational run(int source, int sink);

  Rational flow(int edge) const { return capacity_[edge] - residual_[edge]; }
  int edge_from(int edge) const { return to_[edge ^ 1]; }
  int edge_to(int edge) const { return to_[edge]; }
  int edge_count() const { return static_cast<int>(to_.size()); }
  int node_count() const { return static_cast<int>(adjacency_.size()); }

  // Nodes reachable from `source` in the residual graph of the last run.
  std::vector<bool> residual_reachable(int source) const;

 private:
  bool build_levels(int source, int sink);
  Rational augment(int node, int sink, const Rational& limit);

  std::vector<std::vector<int>> adjacency_;
  std::vector<int> to_;
  std::vector<Rational> capacity_;
  std::vector<Rational> residual_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

}  // namespace negdep::detail
