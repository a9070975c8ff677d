#include "negdep/coupling.hpp"

#include <algorithm>
#include <set>

#include "negdep/detail/maxflow.hpp"

namespace negdep {

namespace {

constexpr int kSource = 0;
constexpr int kSink = 1;

bool admissible(Bits x, Bits y, bool covering) {
  return leq(x, y) && (!covering || weight(y) - weight(x) <= 1);
}

struct TransportNetwork {
  detail::MaxFlow net{2};
  std::vector<int> lower_node;
  std::vector<int> upper_node;
  std::vector<int> pair_edge;
  std::vector<std::pair<std::size_t, std::size_t>> pair_atoms;
  Rational value;
};

TransportNetwork solve_transport(const ExplicitMeasure& lower, const ExplicitMeasure& upper, bool covering) {
  if (lower.n() != upper.n()) {
    throw Error(ErrorCode::DimensionMismatch, "coupling needs equal variable counts, got " +
                                                  std::to_string(lower.n()) + " and " + std::to_string(upper.n()));
  }
  const auto& xs = lower.atoms();
  const auto& ys = upper.atoms();
  TransportNetwork t;
  std::vector<int> source_edge, sink_edge;
  for (const auto& a : xs) {
    t.lower_node.push_back(t.net.add_node());
    source_edge.push_back(t.net.add_edge(kSource, t.lower_node.back(), a.p));
  }
  for (const auto& b : ys) {
    t.upper_node.push_back(t.net.add_node());
    sink_edge.push_back(t.net.add_edge(t.upper_node.back(), kSink, b.p));
  }
  // Capacity 2 exceeds the unit total supply, so these edges never bind.
  const Rational unbounded = 2;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (!admissible(xs[i].x, ys[j].x, covering)) continue;
      t.pair_edge.push_back(t.net.add_edge(t.lower_node[i], t.upper_node[j], unbounded));
      t.pair_atoms.emplace_back(i, j);
    }
  }
  // Greedy start: scan x in lexicographic order and fill the lexicographically
  // smallest admissible y first. Augmentation then finishes the job.
  std::vector<Rational> supply, demand;
  for (const auto& a : xs) supply.push_back(a.p);
  for (const auto& b : ys) demand.push_back(b.p);
  for (std::size_t k = 0; k < t.pair_edge.size(); ++k) {
    const auto [i, j] = t.pair_atoms[k];
    if (sgn(supply[i]) == 0 || sgn(demand[j]) == 0) continue;
    const Rational amount = supply[i] < demand[j] ? supply[i] : demand[j];
    t.net.preload(source_edge[i], amount);
    t.net.preload(t.pair_edge[k], amount);
    t.net.preload(sink_edge[j], amount);
    supply[i] -= amount;
    demand[j] -= amount;
  }
  t.value = t.net.run(kSource, kSink);
  return t;
}

DominanceCertificate extract_cut(const ExplicitMeasure& lower, const ExplicitMeasure& upper,
                                 const TransportNetwork& t, bool covering) {
  const int L = lower.n();
  const auto reachable = t.net.residual_reachable(kSource);
  DominanceCertificate cert;
  cert.bits = L;
  cert.kind = covering ? CutKind::InfeasibilityCut : CutKind::DownClosed;
  for (std::size_t j = 0; j < upper.atoms().size(); ++j) {
    if (!reachable[static_cast<std::size_t>(t.upper_node[j])]) cert.targets.push_back(upper.atoms()[j].x);
  }
  for (Bits z = 0; z <= full_mask(L); ++z) {
    const bool in_set = std::any_of(cert.targets.begin(), cert.targets.end(),
                                    [&](Bits y) { return admissible(z, y, covering); });
    if (in_set) cert.down_set.push_back(z);
    if (z == full_mask(L)) break;
  }
  std::sort(cert.down_set.begin(), cert.down_set.end(), [L](Bits a, Bits b) { return lex_less(a, b, L); });
  std::sort(cert.targets.begin(), cert.targets.end(), [L](Bits a, Bits b) { return lex_less(a, b, L); });
  cert.lower_mass = 0;
  cert.upper_mass = 0;
  for (Bits z : cert.down_set) cert.lower_mass += lower.probability(z);
  if (covering) {
    for (Bits y : cert.targets) cert.upper_mass += upper.probability(y);
  } else {
    for (Bits z : cert.down_set) cert.upper_mass += upper.probability(z);
    // Only the down-closure is reported for the order-only case.
    cert.targets.clear();
  }
  return cert;
}

}  // namespace

DominanceFailure::DominanceFailure(DominanceCertificate certificate)
    : Error(ErrorCode::DominanceFails, "no coupling: lower mass " + pretty_rational(certificate.lower_mass) +
                                           " < upper mass " + pretty_rational(certificate.upper_mass)),
      certificate_(std::move(certificate)) {}

DominanceResult check_coupling_feasible(const ExplicitMeasure& lower, const ExplicitMeasure& upper, bool covering) {
  TransportNetwork t = solve_transport(lower, upper, covering);
  DominanceResult result;
  result.max_flow = t.value;
  result.dominates = t.value == 1;
  if (!result.dominates) result.certificate = extract_cut(lower, upper, t, covering);
  return result;
}

DominanceResult check_dominance(const ExplicitMeasure& lower, const ExplicitMeasure& upper) {
  return check_coupling_feasible(lower, upper, false);
}

Coupling build_monotone_coupling(const ExplicitMeasure& lower, const ExplicitMeasure& upper, bool covering_mode) {
  TransportNetwork t = solve_transport(lower, upper, covering_mode);
  if (t.value != 1) throw DominanceFailure(extract_cut(lower, upper, t, covering_mode));
  Coupling c{lower, upper, {}, covering_mode};
  for (std::size_t k = 0; k < t.pair_edge.size(); ++k) {
    Rational f = t.net.flow(t.pair_edge[k]);
    if (sgn(f) > 0) {
      const auto [i, j] = t.pair_atoms[k];
      c.mass.push_back({lower.atoms()[i].x, upper.atoms()[j].x, std::move(f)});
    }
  }
  return c;
}

Rational coupling_displacement(const Coupling& c) {
  Rational total = 0;
  for (const auto& pair : c.mass) total += pair.p * (weight(pair.y) - weight(pair.x));
  return total;
}

bool verify_certificate(const ExplicitMeasure& lower, const ExplicitMeasure& upper, const DominanceCertificate& cert) {
  if (lower.n() != upper.n() || cert.bits != lower.n()) return false;
  const std::set<Bits> members(cert.down_set.begin(), cert.down_set.end());
  Rational lower_mass = 0, upper_mass = 0;
  for (Bits z : members) lower_mass += lower.probability(z);
  if (cert.kind == CutKind::DownClosed) {
    for (Bits z : members) {
      for (int i = 0; i < cert.bits; ++i) {
        const Bits bit = Bits{1} << i;
        if ((z & bit) && !members.count(z ^ bit)) return false;
      }
    }
    for (Bits z : members) upper_mass += upper.probability(z);
  } else {
    std::set<Bits> expected;
    for (Bits z = 0; z <= full_mask(cert.bits); ++z) {
      for (Bits y : cert.targets) {
        if (admissible(z, y, true)) {
          expected.insert(z);
          break;
        }
      }
      if (z == full_mask(cert.bits)) break;
    }
    if (expected != members) return false;
    for (Bits y : std::set<Bits>(cert.targets.begin(), cert.targets.end())) upper_mass += upper.probability(y);
  }
  return lower_mass == cert.lower_mass && upper_mass == cert.upper_mass && lower_mass < upper_mass;
}

bool verify_coupling(const Coupling& c) {
  const int L = c.lower.n();
  if (c.upper.n() != L) return false;
  std::vector<Atom> row, col;
  for (const auto& pair : c.mass) {
    if (sgn(pair.p) <= 0 || !admissible(pair.x, pair.y, c.covering)) return false;
    row.push_back({pair.x, pair.p});
    col.push_back({pair.y, pair.p});
  }
  try {
    return ExplicitMeasure::from_atoms(L, row) == c.lower && ExplicitMeasure::from_atoms(L, col) == c.upper;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace negdep
