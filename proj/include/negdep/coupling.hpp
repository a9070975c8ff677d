#pragma once

// Monotone couplings between two measures on {0,1}^L, built by max-flow.
// "lower" is the stochastically smaller law: a coupling pairs x ~ lower with
// y ~ upper so that x <= y coordinatewise.

#include <optional>
#include <vector>

#include "negdep/measure.hpp"

namespace negdep {

struct CoupledPair {
  Bits x = 0;
  Bits y = 0;
  Rational p;
};

struct Coupling {
  ExplicitMeasure lower;
  ExplicitMeasure upper;
  // Positive entries, ordered by (x, y) lexicographically.
  std::vector<CoupledPair> mass;
  bool covering = false;
};

enum class CutKind {
  // M is down-closed and lower(M) < upper(M).
  DownClosed,
  // Covering mode: lower mass of every x within one raising step of `targets`
  // is smaller than the upper mass of `targets` (a Hall violation).
  InfeasibilityCut,
};

struct DominanceCertificate {
  CutKind kind = CutKind::DownClosed;
  int bits = 0;
  // DownClosed: the set M. InfeasibilityCut: the neighbourhood of `targets`.
  std::vector<Bits> down_set;
  std::vector<Bits> targets;
  Rational lower_mass;
  Rational upper_mass;
};

struct DominanceResult {
  bool dominates = false;
  std::optional<DominanceCertificate> certificate;
  Rational max_flow;
};

class DominanceFailure : public Error {
 public:
  explicit DominanceFailure(DominanceCertificate certificate);
  const DominanceCertificate& certificate() const { return certificate_; }

 private:
  DominanceCertificate certificate_;
};

// Dominates iff upper stochastically dominates lower (a monotone coupling
// exists). On failure the certificate is a down-closed M with
// lower(M) < upper(M).
DominanceResult check_dominance(const ExplicitMeasure& lower, const ExplicitMeasure& upper);

// Same decision with edges restricted to x <= y and |y| - |x| <= 1 when
// `covering` is set.
DominanceResult check_coupling_feasible(const ExplicitMeasure& lower, const ExplicitMeasure& upper, bool covering);

// Throws DominanceFailure when no coupling exists.
Coupling build_monotone_coupling(const ExplicitMeasure& lower, const ExplicitMeasure& upper, bool covering_mode);

// Sum of p(x,y) * (|y| - |x|).
Rational coupling_displacement(const Coupling& c);

// Re-derives the certificate's claims from the raw measures: closure (or
// neighbourhood) structure and the strict mass inequality.
bool verify_certificate(const ExplicitMeasure& lower, const ExplicitMeasure& upper, const DominanceCertificate& cert);

// Checks marginals and support constraints of a coupling.
bool verify_coupling(const Coupling& c);

}  // namespace negdep
