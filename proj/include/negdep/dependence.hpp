#pragma once

// Exhaustive, exact decision procedures for negative-dependence notions on an
// explicit measure. Each returns a NotionReport whose certificate can be
// re-verified from the raw measure with recheck_certificate().

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "negdep/coupling.hpp"
#include "negdep/measure.hpp"

namespace negdep {

enum class Notion {
  PairwiseNC,
  CylinderDep,
  NegAssociation,
  NegRegression,
  CondNegAssociation,
  StochasticCovering,
  RayleighFalsifier,
};

enum class Verdict { Holds, Fails, ViolationFound, NoViolationFound };

std::string_view notion_name(Notion notion);
std::string_view notion_short_name(Notion notion);
std::string_view verdict_name(Verdict verdict);
Notion parse_notion(std::string_view short_name);
const std::vector<Notion>& all_notions();

struct WorkStats {
  std::uint64_t pairs_checked = 0;
  std::uint64_t subsets_checked = 0;
  std::uint64_t upsets_checked = 0;
  std::uint64_t conditionals_checked = 0;
  std::uint64_t flows_run = 0;
  std::uint64_t points_evaluated = 0;
};

struct PairwiseCertificate {
  int i = 0;
  int j = 0;
  Rational covariance;
};

struct CylinderCertificate {
  std::vector<int> subset;
  // false: E[prod X_i] > prod E[X_i]; true: the same with 1 - X_i.
  bool complemented = false;
  Rational product_expectation;
  Rational product_of_marginals;
};

// Up-sets are listed as points in local coordinates of `left` / `right`
// (local bit k is variable left[k]).
struct AssociationCertificate {
  Assignment conditioned_on;
  std::vector<int> left;
  std::vector<int> right;
  std::vector<Bits> up_set_left;
  std::vector<Bits> up_set_right;
  Rational covariance;
};

// Two assignments smaller <= larger of the revealed variables (local bits);
// the law given `larger` should sit below the law given `smaller`. The cut
// is over the unrevealed variables in ascending order.
// NegRegression: J = revealed, a = smaller, b = larger.
// StochasticCovering: I = revealed, a' = smaller, a = larger.
struct ConditionalCertificate {
  std::vector<int> revealed;
  Bits smaller = 0;
  Bits larger = 0;
  DominanceCertificate cut;
};

struct RayleighCertificate {
  int i = 0;
  int j = 0;
  std::vector<Rational> point;
  Rational delta;
};

using Certificate = std::variant<PairwiseCertificate, CylinderCertificate, AssociationCertificate,
                                 ConditionalCertificate, RayleighCertificate>;

struct NotionReport {
  Notion notion = Notion::PairwiseNC;
  Verdict verdict = Verdict::Holds;
  std::optional<Certificate> certificate;
  WorkStats work;
  // PairwiseNC: the largest covariance over all pairs.
  std::optional<Rational> extremal;

  bool passed() const { return verdict == Verdict::Holds || verdict == Verdict::NoViolationFound; }
};

// F(z) = E[prod z_j^{X_j}], multi-affine with the atom masses as coefficients.
class GeneratingPolynomial {
 public:
  explicit GeneratingPolynomial(const ExplicitMeasure& m);

  int n() const { return n_; }
  const std::vector<Atom>& coefficients() const { return coefficients_; }

  Rational evaluate(std::span<const Rational> z) const;
  // Partial derivative in the variables of `mask` (each at most once).
  Rational derivative(Bits mask, std::span<const Rational> z) const;
  // d_i F * d_j F - F * d_i d_j F.
  Rational rayleigh_difference(int i, int j, std::span<const Rational> z) const;

 private:
  int n_;
  std::vector<Atom> coefficients_;
};

NotionReport check_pairwise_nc(const ExplicitMeasure& m);
NotionReport check_cylinder(const ExplicitMeasure& m);
NotionReport check_neg_association(const ExplicitMeasure& m);
NotionReport check_neg_regression(const ExplicitMeasure& m);
NotionReport check_cna(const ExplicitMeasure& m);
NotionReport check_stochastic_covering(const ExplicitMeasure& m);
NotionReport rayleigh_falsify(const ExplicitMeasure& m, const std::vector<std::vector<Rational>>& grid);
NotionReport rayleigh_falsify(const ExplicitMeasure& m);

// {0, 1, -1, 2, -2}^n in that per-coordinate order for n <= 5, otherwise
// 1000 seeded pseudo-random rational points.
std::vector<std::vector<Rational>> default_rayleigh_grid(int n);

NotionReport check_notion(const ExplicitMeasure& m, Notion notion);

// Recomputes the certificate's claim directly from the measure; true iff the
// claimed violation is reproduced exactly.
bool recheck_certificate(const ExplicitMeasure& m, const NotionReport& report);

// Up-sets of {0,1}^k as bitmasks over the 2^k points, k <= 6.
const std::vector<std::uint64_t>& up_sets(int k);

}  // namespace negdep
