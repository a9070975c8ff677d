#include "negdep/dependence.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <random>

#include "negdep/detail/maxflow.hpp"

namespace negdep {

std::string_view notion_name(Notion notion) {
  switch (notion) {
    case Notion::PairwiseNC: return "PairwiseNC";
    case Notion::CylinderDep: return "CylinderDep";
    case Notion::NegAssociation: return "NegAssociation";
    case Notion::NegRegression: return "NegRegression";
    case Notion::CondNegAssociation: return "CondNegAssociation";
    case Notion::StochasticCovering: return "StochasticCovering";
    case Notion::RayleighFalsifier: return "RayleighFalsifier";
  }
  return "Unknown";
}

std::string_view notion_short_name(Notion notion) {
  switch (notion) {
    case Notion::PairwiseNC: return "nc";
    case Notion::CylinderDep: return "cyl";
    case Notion::NegAssociation: return "na";
    case Notion::NegRegression: return "nr";
    case Notion::CondNegAssociation: return "cna";
    case Notion::StochasticCovering: return "sc";
    case Notion::RayleighFalsifier: return "rayleigh";
  }
  return "?";
}

std::string_view verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::Holds: return "Holds";
    case Verdict::Fails: return "Fails";
    case Verdict::ViolationFound: return "ViolationFound";
    case Verdict::NoViolationFound: return "NoViolationFound";
  }
  return "Unknown";
}

const std::vector<Notion>& all_notions() {
  static const std::vector<Notion> notions = {
      Notion::PairwiseNC,         Notion::CylinderDep,        Notion::NegAssociation,   Notion::NegRegression,
      Notion::CondNegAssociation, Notion::StochasticCovering, Notion::RayleighFalsifier};
  return notions;
}

Notion parse_notion(std::string_view short_name) {
  for (Notion notion : all_notions()) {
    if (notion_short_name(notion) == short_name) return notion;
  }
  throw Error(ErrorCode::ParseError, "unknown notion '" + std::string(short_name) + "'");
}

// ---- up-set enumeration -----------------------------------------------------

const std::vector<std::uint64_t>& up_sets(int k) {
  constexpr int kMaxK = 6;
  if (k < 0 || k > kMaxK) {
    throw Error(ErrorCode::TooLarge, "up-set enumeration supports at most 6 variables per side");
  }
  static std::array<std::vector<std::uint64_t>, kMaxK + 1> cache;
  static std::array<std::once_flag, kMaxK + 1> once;
  std::call_once(once[static_cast<std::size_t>(k)], [k] {
    if (k == 0) {
      cache[0] = {0, 1};
      return;
    }
    // An up-set of {0,1}^k splits on the top variable into U0 (top = 0) and
    // U1 (top = 1), both up-sets of {0,1}^{k-1} with U0 contained in U1.
    const auto& smaller = up_sets(k - 1);
    const int shift = 1 << (k - 1);
    std::vector<std::uint64_t> out;
    for (std::uint64_t u0 : smaller) {
      for (std::uint64_t u1 : smaller) {
        if ((u0 & ~u1) == 0) out.push_back(u0 | (u1 << shift));
      }
    }
    cache[static_cast<std::size_t>(k)] = std::move(out);
  });
  return cache[static_cast<std::size_t>(k)];
}

namespace {

bool is_up_set(const std::vector<Bits>& points, int k) {
  const std::vector<Bits> sorted = [&] {
    auto s = points;
    std::sort(s.begin(), s.end());
    return s;
  }();
  for (Bits p : sorted) {
    for (int i = 0; i < k; ++i) {
      const Bits raised = p | (Bits{1} << i);
      if (!std::binary_search(sorted.begin(), sorted.end(), raised)) return false;
    }
  }
  return true;
}

std::vector<Bits> points_of(std::uint64_t set, int k) {
  std::vector<Bits> out;
  for (Bits p = 0; p < (Bits{1} << k); ++p) {
    if ((set >> p) & 1u) out.push_back(p);
  }
  return out;
}

std::vector<Bits> lex_sorted(std::vector<Bits> points, int k) {
  std::sort(points.begin(), points.end(), [k](Bits a, Bits b) { return lex_less(a, b, k); });
  return points;
}

// Largest sum of `w` over an up-set of {0,1}^k, found as a maximum-weight
// closure. Returns the set attaining it (the minimal one).
std::pair<Rational, std::vector<Bits>> max_weight_up_set(const std::vector<Rational>& w, int k, WorkStats& work) {
  const int points = 1 << k;
  Rational positive = 0, magnitude = 0;
  for (const auto& v : w) {
    if (sgn(v) > 0) positive += v;
    magnitude += abs(v);
  }
  if (sgn(positive) == 0) return {Rational(0), {}};
  ++work.flows_run;
  detail::MaxFlow net(2 + points);
  const Rational unbounded = magnitude + 1;
  for (int p = 0; p < points; ++p) {
    if (sgn(w[static_cast<std::size_t>(p)]) > 0) net.add_edge(0, 2 + p, w[static_cast<std::size_t>(p)]);
    if (sgn(w[static_cast<std::size_t>(p)]) < 0) net.add_edge(2 + p, 1, -w[static_cast<std::size_t>(p)]);
    for (int i = 0; i < k; ++i) {
      if (!(p & (1 << i))) net.add_edge(2 + p, 2 + (p | (1 << i)), unbounded);
    }
  }
  net.run(0, 1);
  const auto reach = net.residual_reachable(0);
  std::vector<Bits> chosen;
  Rational value = 0;
  for (int p = 0; p < points; ++p) {
    if (reach[static_cast<std::size_t>(2 + p)]) {
      chosen.push_back(static_cast<Bits>(p));
      value += w[static_cast<std::size_t>(p)];
    }
  }
  return {value, chosen};
}

// Searches bipartitions I + J = [n] (I holding variable 1) and up-sets A, B
// with Cov[1_A(X_I), 1_B(X_J)] > 0. Up-sets are enumerated on the smaller
// side; the best partner on the other side comes from a closure flow.
std::optional<AssociationCertificate> find_association_violation(const ExplicitMeasure& m,
                                                                 const std::vector<int>& original, WorkStats& work) {
  const int n = m.n();
  if (n < 2) return std::nullopt;
  for (Bits left_mask : canonical_subsets(n, 1, n - 1)) {
    if (!test_var(left_mask, 1)) continue;
    ++work.subsets_checked;
    const std::vector<int> left = indices_of(left_mask);
    const std::vector<int> right = indices_of(full_mask(n) & ~left_mask);
    const bool enumerate_left = left.size() <= right.size();
    const std::vector<int>& side_e = enumerate_left ? left : right;
    const std::vector<int>& side_o = enumerate_left ? right : left;
    const int ke = static_cast<int>(side_e.size());
    const int ko = static_cast<int>(side_o.size());
    const std::size_t ne = std::size_t{1} << ke, no = std::size_t{1} << ko;
    std::vector<Rational> joint(ne * no), pe(ne), po(no);
    for (const auto& atom : m.atoms()) {
      const Bits e = gather(atom.x, side_e), o = gather(atom.x, side_o);
      joint[e * no + o] += atom.p;
      pe[e] += atom.p;
      po[o] += atom.p;
    }
    const std::uint64_t everything = ke == 6 ? ~std::uint64_t{0} : ((std::uint64_t{1} << ne) - 1);
    for (std::uint64_t a : up_sets(ke)) {
      if (a == 0 || a == everything) continue;
      ++work.upsets_checked;
      Rational pa = 0;
      std::vector<Rational> w(no);
      for (std::size_t e = 0; e < ne; ++e) {
        if (!((a >> e) & 1u)) continue;
        pa += pe[e];
        for (std::size_t o = 0; o < no; ++o) w[o] += joint[e * no + o];
      }
      for (std::size_t o = 0; o < no; ++o) w[o] -= pa * po[o];
      auto [value, best] = max_weight_up_set(w, ko, work);
      if (sgn(value) <= 0) continue;
      AssociationCertificate cert;
      std::vector<Bits> set_e = lex_sorted(points_of(a, ke), ke);
      std::vector<Bits> set_o = lex_sorted(std::move(best), ko);
      for (int i : left) cert.left.push_back(original[static_cast<std::size_t>(i)]);
      for (int i : right) cert.right.push_back(original[static_cast<std::size_t>(i)]);
      cert.up_set_left = enumerate_left ? set_e : set_o;
      cert.up_set_right = enumerate_left ? set_o : set_e;
      cert.covariance = value;
      return cert;
    }
  }
  return std::nullopt;
}

std::vector<int> identity_map(int n) {
  std::vector<int> map(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) map[static_cast<std::size_t>(i)] = i;
  return map;
}

NotionReport make_report(Notion notion) {
  NotionReport r;
  r.notion = notion;
  r.verdict = Verdict::Holds;
  return r;
}

// Marginal law of X_J as a dense table indexed by local bits.
std::vector<Rational> local_marginal(const ExplicitMeasure& m, const std::vector<int>& J) {
  std::vector<Rational> out(std::size_t{1} << J.size());
  for (const auto& atom : m.atoms()) out[gather(atom.x, J)] += atom.p;
  return out;
}

// Local assignments of |J| bits in lexicographic bitstring order.
std::vector<Bits> lex_points(int k) {
  std::vector<Bits> out;
  for (Bits p = 0; p < (Bits{1} << k); ++p) out.push_back(p);
  return lex_sorted(std::move(out), k);
}

class ConditionalLaws {
 public:
  ConditionalLaws(const ExplicitMeasure& m, std::vector<int> revealed)
      : m_(m), revealed_(std::move(revealed)), mask_(mask_of(revealed_)), laws_(std::size_t{1} << revealed_.size()) {}

  const ExplicitMeasure& operator()(Bits local) {
    auto& slot = laws_[local];
    if (!slot) slot = condition(m_, Assignment::from_bits(mask_, scatter(local, revealed_)));
    return *slot;
  }

 private:
  const ExplicitMeasure& m_;
  std::vector<int> revealed_;
  Bits mask_;
  std::vector<std::optional<ExplicitMeasure>> laws_;
};

}  // namespace

// ---- pairwise / cylinder ------------------------------------------------------

NotionReport check_pairwise_nc(const ExplicitMeasure& m) {
  NotionReport report = make_report(Notion::PairwiseNC);
  const int n = m.n();
  const auto means = conditional_means(m, Assignment{});
  std::optional<PairwiseCertificate> worst;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      ++report.work.pairs_checked;
      Rational both = 0;
      for (const auto& atom : m.atoms()) {
        if (test_var(atom.x, i) && test_var(atom.x, j)) both += atom.p;
      }
      Rational cov = both - means[static_cast<std::size_t>(i)] * means[static_cast<std::size_t>(j)];
      if (!worst || cov > worst->covariance) worst = PairwiseCertificate{i, j, cov};
    }
  }
  if (worst) {
    report.extremal = worst->covariance;
    if (sgn(worst->covariance) > 0) {
      report.verdict = Verdict::Fails;
      report.certificate = *worst;
    }
  }
  return report;
}

NotionReport check_cylinder(const ExplicitMeasure& m) {
  const int n = m.n();
  require_within_cap(n, caps::kMeasure, "check_cylinder");
  NotionReport report = make_report(Notion::CylinderDep);
  const std::size_t size = std::size_t{1} << n;
  // ones[S] = E[prod_{i in S} X_i], zeros[S] = E[prod_{i in S} (1 - X_i)].
  std::vector<Rational> ones(size), zeros(size);
  for (const auto& atom : m.atoms()) {
    ones[atom.x] += atom.p;
    zeros[full_mask(n) & ~atom.x] += atom.p;
  }
  for (int i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t s = 0; s < size; ++s) {
      if (!(s & bit)) {
        ones[s] += ones[s | bit];
        zeros[s] += zeros[s | bit];
      }
    }
  }
  std::vector<Rational> prod_ones(size), prod_zeros(size);
  prod_ones[0] = 1;
  prod_zeros[0] = 1;
  for (std::size_t s = 1; s < size; ++s) {
    const std::size_t low = s & (~s + 1);
    const std::size_t i = static_cast<std::size_t>(std::countr_zero(low));
    const Rational& p = ones[std::size_t{1} << i];
    prod_ones[s] = prod_ones[s ^ low] * p;
    prod_zeros[s] = prod_zeros[s ^ low] * (1 - p);
  }
  for (Bits s : canonical_subsets(n, 2)) {
    ++report.work.subsets_checked;
    if (ones[s] > prod_ones[s]) {
      report.verdict = Verdict::Fails;
      report.certificate = CylinderCertificate{indices_of(s), false, ones[s], prod_ones[s]};
      return report;
    }
    if (zeros[s] > prod_zeros[s]) {
      report.verdict = Verdict::Fails;
      report.certificate = CylinderCertificate{indices_of(s), true, zeros[s], prod_zeros[s]};
      return report;
    }
  }
  return report;
}

// ---- association --------------------------------------------------------------

NotionReport check_neg_association(const ExplicitMeasure& m) {
  require_within_cap(m.n(), caps::kNegAssociation, "check_neg_association");
  NotionReport report = make_report(Notion::NegAssociation);
  if (auto cert = find_association_violation(m, identity_map(m.n()), report.work)) {
    report.verdict = Verdict::Fails;
    report.certificate = std::move(*cert);
  }
  return report;
}

NotionReport check_cna(const ExplicitMeasure& m) {
  const int n = m.n();
  require_within_cap(n, caps::kNegAssociation, "check_cna");
  NotionReport report = make_report(Notion::CondNegAssociation);
  if (n < 2) return report;
  for (Bits k_mask : canonical_subsets(n, 0, n - 2)) {
    const std::vector<int> revealed = indices_of(k_mask);
    const std::vector<int> rest = indices_of(full_mask(n) & ~k_mask);
    std::vector<int> original{0};
    original.insert(original.end(), rest.begin(), rest.end());
    const auto marginal_k = local_marginal(m, revealed);
    for (Bits a : lex_points(static_cast<int>(revealed.size()))) {
      if (sgn(marginal_k[a]) == 0) continue;
      ++report.work.conditionals_checked;
      const Assignment on = Assignment::from_bits(k_mask, scatter(a, revealed));
      const ExplicitMeasure law = on.empty() ? m : condition(m, on);
      if (auto cert = find_association_violation(law, original, report.work)) {
        cert->conditioned_on = on;
        report.verdict = Verdict::Fails;
        report.certificate = std::move(*cert);
        return report;
      }
    }
  }
  return report;
}

// ---- regression / covering -----------------------------------------------------

NotionReport check_neg_regression(const ExplicitMeasure& m) {
  const int n = m.n();
  require_within_cap(n, caps::kNegRegression, "check_neg_regression");
  NotionReport report = make_report(Notion::NegRegression);
  for (Bits j_mask : canonical_subsets(n, 1, n - 1)) {
    ++report.work.subsets_checked;
    const std::vector<int> J = indices_of(j_mask);
    const int k = static_cast<int>(J.size());
    const auto pj = local_marginal(m, J);
    const std::size_t points = pj.size();
    // reach[a] holds every b reachable from a through covering steps that
    // stay on positive-probability assignments.
    std::vector<std::vector<bool>> reach(points, std::vector<bool>(points, false));
    for (Bits a = 0; a < points; ++a) {
      if (sgn(pj[a]) == 0) continue;
      std::vector<Bits> stack{a};
      reach[a][a] = true;
      while (!stack.empty()) {
        const Bits c = stack.back();
        stack.pop_back();
        for (int i = 0; i < k; ++i) {
          const Bits d = c | (Bits{1} << i);
          if (d != c && sgn(pj[d]) > 0 && !reach[a][d]) {
            reach[a][d] = true;
            stack.push_back(d);
          }
        }
      }
    }
    ConditionalLaws law(m, J);
    const auto order = lex_points(k);
    for (Bits a : order) {
      if (sgn(pj[a]) == 0) continue;
      for (Bits b : order) {
        if (b == a || !leq(a, b) || sgn(pj[b]) == 0) continue;
        const bool adjacent = weight(b) - weight(a) == 1;
        // Dominance composes along positive chains, so those pairs follow
        // from their covering steps.
        if (!adjacent && reach[a][b]) continue;
        ++report.work.pairs_checked;
        ++report.work.flows_run;
        DominanceResult r = check_dominance(law(b), law(a));
        if (!r.dominates) {
          report.verdict = Verdict::Fails;
          report.certificate = ConditionalCertificate{J, a, b, std::move(*r.certificate)};
          return report;
        }
      }
    }
  }
  return report;
}

NotionReport check_stochastic_covering(const ExplicitMeasure& m) {
  const int n = m.n();
  require_within_cap(n, caps::kStochasticCovering, "check_stochastic_covering");
  NotionReport report = make_report(Notion::StochasticCovering);
  for (Bits i_mask : canonical_subsets(n, 1, n - 1)) {
    ++report.work.subsets_checked;
    const std::vector<int> I = indices_of(i_mask);
    const int k = static_cast<int>(I.size());
    const auto pi = local_marginal(m, I);
    ConditionalLaws law(m, I);
    for (Bits low : lex_points(k)) {
      if (sgn(pi[low]) == 0) continue;
      for (Bits high : lex_points(k)) {
        if (!leq(low, high) || weight(high) - weight(low) != 1 || sgn(pi[high]) == 0) continue;
        ++report.work.pairs_checked;
        ++report.work.flows_run;
        DominanceResult r = check_coupling_feasible(law(high), law(low), true);
        if (!r.dominates) {
          report.verdict = Verdict::Fails;
          report.certificate = ConditionalCertificate{I, low, high, std::move(*r.certificate)};
          return report;
        }
      }
    }
  }
  return report;
}

// ---- Rayleigh ------------------------------------------------------------------

GeneratingPolynomial::GeneratingPolynomial(const ExplicitMeasure& m) : n_(m.n()), coefficients_(m.atoms()) {}

Rational GeneratingPolynomial::evaluate(std::span<const Rational> z) const { return derivative(0, z); }

Rational GeneratingPolynomial::derivative(Bits mask, std::span<const Rational> z) const {
  if (static_cast<int>(z.size()) != n_) {
    throw Error(ErrorCode::DimensionMismatch, "point has " + std::to_string(z.size()) + " coordinates");
  }
  Rational total = 0;
  for (const auto& c : coefficients_) {
    if (!leq(mask, c.x)) continue;
    Rational term = c.p;
    for (int i = 1; i <= n_; ++i) {
      if (test_var(c.x, i) && !test_var(mask, i)) term *= z[static_cast<std::size_t>(i - 1)];
    }
    total += term;
  }
  return total;
}

Rational GeneratingPolynomial::rayleigh_difference(int i, int j, std::span<const Rational> z) const {
  const Bits bi = Bits{1} << (i - 1), bj = Bits{1} << (j - 1);
  return derivative(bi, z) * derivative(bj, z) - evaluate(z) * derivative(bi | bj, z);
}

std::vector<std::vector<Rational>> default_rayleigh_grid(int n) {
  std::vector<std::vector<Rational>> grid;
  if (n <= 5) {
    static const int values[] = {0, 1, -1, 2, -2};
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) total *= 5;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<Rational> point(static_cast<std::size_t>(n));
      std::size_t rest = code;
      for (int i = n - 1; i >= 0; --i) {
        point[static_cast<std::size_t>(i)] = values[rest % 5];
        rest /= 5;
      }
      grid.push_back(std::move(point));
    }
    return grid;
  }
  std::mt19937_64 rng(0x5eed2024ULL);
  std::uniform_int_distribution<int> numerator(-8, 8);
  std::uniform_int_distribution<int> denominator(1, 4);
  for (int k = 0; k < 1000; ++k) {
    std::vector<Rational> point;
    for (int i = 0; i < n; ++i) {
      Rational q(numerator(rng), denominator(rng));
      q.canonicalize();
      point.push_back(q);
    }
    grid.push_back(std::move(point));
  }
  return grid;
}

NotionReport rayleigh_falsify(const ExplicitMeasure& m, const std::vector<std::vector<Rational>>& grid) {
  NotionReport report = make_report(Notion::RayleighFalsifier);
  report.verdict = Verdict::NoViolationFound;
  const GeneratingPolynomial poly(m);
  const int n = m.n();
  for (const auto& z : grid) {
    ++report.work.points_evaluated;
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        Rational delta = poly.rayleigh_difference(i, j, z);
        if (sgn(delta) < 0) {
          report.verdict = Verdict::ViolationFound;
          report.certificate = RayleighCertificate{i, j, z, delta};
          return report;
        }
      }
    }
  }
  return report;
}

NotionReport rayleigh_falsify(const ExplicitMeasure& m) { return rayleigh_falsify(m, default_rayleigh_grid(m.n())); }

NotionReport check_notion(const ExplicitMeasure& m, Notion notion) {
  switch (notion) {
    case Notion::PairwiseNC: return check_pairwise_nc(m);
    case Notion::CylinderDep: return check_cylinder(m);
    case Notion::NegAssociation: return check_neg_association(m);
    case Notion::NegRegression: return check_neg_regression(m);
    case Notion::CondNegAssociation: return check_cna(m);
    case Notion::StochasticCovering: return check_stochastic_covering(m);
    case Notion::RayleighFalsifier: return rayleigh_falsify(m);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown notion");
}

// ---- certificate re-checks ---------------------------------------------------------

namespace {

bool recheck(const ExplicitMeasure& m, const PairwiseCertificate& c) {
  const std::vector<int> pair{c.i, c.j};
  const ExplicitMeasure mm = marginal(m, pair);
  const Rational both = mm.probability(Bits{3});
  const Rational pi = mm.probability(Bits{1}) + both;
  const Rational pj = mm.probability(Bits{2}) + both;
  const Rational cov = both - pi * pj;
  return cov == c.covariance && sgn(cov) > 0;
}

bool recheck(const ExplicitMeasure& m, const CylinderCertificate& c) {
  const ExplicitMeasure mm = marginal(m, c.subset);
  const int k = mm.n();
  const Bits target = c.complemented ? 0 : full_mask(k);
  const Rational lhs = mm.probability(target);
  Rational rhs = 1;
  for (int i = 1; i <= k; ++i) {
    const std::vector<int> one{i};
    const Rational p = marginal(mm, one).probability(Bits{1});
    rhs *= c.complemented ? Rational(1 - p) : p;
  }
  return lhs == c.product_expectation && rhs == c.product_of_marginals && lhs > rhs;
}

bool recheck(const ExplicitMeasure& m, const AssociationCertificate& c) {
  const ExplicitMeasure base = c.conditioned_on.empty() ? m : condition(m, c.conditioned_on);
  // Original index -> position among the unconditioned variables.
  const std::vector<int> rest = indices_of(full_mask(m.n()) & ~c.conditioned_on.mask());
  auto local = [&](const std::vector<int>& vars) {
    std::vector<int> out;
    for (int v : vars) {
      auto it = std::find(rest.begin(), rest.end(), v);
      if (it == rest.end()) return std::vector<int>{};
      out.push_back(static_cast<int>(it - rest.begin()) + 1);
    }
    return out;
  };
  const std::vector<int> left = local(c.left), right = local(c.right);
  if (left.empty() || right.empty() || (mask_of(left) & mask_of(right)) != 0) return false;
  const int kl = static_cast<int>(left.size()), kr = static_cast<int>(right.size());
  if (!is_up_set(c.up_set_left, kl) || !is_up_set(c.up_set_right, kr)) return false;
  auto member = [](const std::vector<Bits>& set, Bits p) { return std::find(set.begin(), set.end(), p) != set.end(); };
  Rational pa = 0, pb = 0, pab = 0;
  for (const auto& atom : base.atoms()) {
    const bool in_a = member(c.up_set_left, gather(atom.x, left));
    const bool in_b = member(c.up_set_right, gather(atom.x, right));
    if (in_a) pa += atom.p;
    if (in_b) pb += atom.p;
    if (in_a && in_b) pab += atom.p;
  }
  const Rational cov = pab - pa * pb;
  return cov == c.covariance && sgn(cov) > 0;
}

bool recheck(const ExplicitMeasure& m, const ConditionalCertificate& c) {
  if (!leq(c.smaller, c.larger) || c.smaller == c.larger) return false;
  const Bits mask = mask_of(c.revealed);
  const ExplicitMeasure lower = condition(m, Assignment::from_bits(mask, scatter(c.larger, c.revealed)));
  const ExplicitMeasure upper = condition(m, Assignment::from_bits(mask, scatter(c.smaller, c.revealed)));
  return verify_certificate(lower, upper, c.cut);
}

bool recheck(const ExplicitMeasure& m, const RayleighCertificate& c) {
  const Rational delta = GeneratingPolynomial(m).rayleigh_difference(c.i, c.j, c.point);
  return delta == c.delta && sgn(delta) < 0;
}

}  // namespace

bool recheck_certificate(const ExplicitMeasure& m, const NotionReport& report) {
  if (!report.certificate) return false;
  return std::visit([&](const auto& cert) { return recheck(m, cert); }, *report.certificate);
}

}  // namespace negdep
