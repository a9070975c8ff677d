#include "negdep/detail/maxflow.hpp"

#include <deque>

namespace negdep::detail {

MaxFlow::MaxFlow(int nodes) : adjacency_(static_cast<std::size_t>(nodes)) {}

int MaxFlow::add_node() {
  adjacency_.emplace_back();
  return static_cast<int>(adjacency_.size()) - 1;
}

int MaxFlow::add_edge(int from, int to, const Rational& capacity) {
  const int id = static_cast<int>(to_.size());
  to_.push_back(to);
  capacity_.push_back(capacity);
  residual_.push_back(capacity);
  to_.push_back(from);
  capacity_.emplace_back(0);
  residual_.emplace_back(0);
  adjacency_[static_cast<std::size_t>(from)].push_back(id);
  adjacency_[static_cast<std::size_t>(to)].push_back(id + 1);
  return id;
}

void MaxFlow::preload(int edge, const Rational& amount) {
  residual_[edge] -= amount;
  residual_[edge ^ 1] += amount;
}

bool MaxFlow::build_levels(int source, int sink) {
  level_.assign(adjacency_.size(), -1);
  std::deque<int> queue{source};
  level_[static_cast<std::size_t>(source)] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int e : adjacency_[static_cast<std::size_t>(u)]) {
      const int v = to_[e];
      if (level_[static_cast<std::size_t>(v)] < 0 && sgn(residual_[e]) > 0) {
        level_[static_cast<std::size_t>(v)] = level_[static_cast<std::size_t>(u)] + 1;
        queue.push_back(v);
      }
    }
  }
  return level_[static_cast<std::size_t>(sink)] >= 0;
}

Rational MaxFlow::augment(int node, int sink, const Rational& limit) {
  if (node == sink) return limit;
  auto& edges = adjacency_[static_cast<std::size_t>(node)];
  for (std::size_t& i = cursor_[static_cast<std::size_t>(node)]; i < edges.size(); ++i) {
    const int e = edges[i];
    const int v = to_[e];
    if (sgn(residual_[e]) <= 0 || level_[static_cast<std::size_t>(v)] != level_[static_cast<std::size_t>(node)] + 1) {
      continue;
    }
    const Rational pushed = augment(v, sink, residual_[e] < limit ? residual_[e] : limit);
    if (sgn(pushed) > 0) {
      residual_[e] -= pushed;
      residual_[e ^ 1] += pushed;
      return pushed;
    }
  }
  return 0;
}

Rational MaxFlow::run(int source, int sink) {
  Rational total = 0;
  for (int e : adjacency_[static_cast<std::size_t>(source)]) {
    if (!(e & 1)) total += flow(e);
  }
  // Nothing can exceed the total source capacity, which is finite here.
  Rational bound = 0;
  for (int e : adjacency_[static_cast<std::size_t>(source)]) {
    if (!(e & 1)) bound += capacity_[e];
  }
  while (build_levels(source, sink)) {
    cursor_.assign(adjacency_.size(), 0);
    while (true) {
      Rational pushed = augment(source, sink, bound + 1);
      if (sgn(pushed) <= 0) break;
      total += pushed;
    }
  }
  return total;
}

std::vector<bool> MaxFlow::residual_reachable(int source) const {
  std::vector<bool> seen(adjacency_.size(), false);
  std::deque<int> queue{source};
  seen[static_cast<std::size_t>(source)] = true;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int e : adjacency_[static_cast<std::size_t>(u)]) {
      const int v = to_[e];
      if (!seen[static_cast<std::size_t>(v)] && sgn(residual_[e]) > 0) {
        seen[static_cast<std::size_t>(v)] = true;
        queue.push_back(v);
      }
    }
  }
  return seen;
}

}  // namespace negdep::detail
