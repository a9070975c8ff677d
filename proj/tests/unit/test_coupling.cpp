#include <gtest/gtest.h>

#include <random>

#include "negdep/coupling.hpp"
#include "oracles.hpp"

using namespace negdep;

namespace {

Rational R(const char* s) { return parse_rational(s); }

ExplicitMeasure delta(const char* x) { return new_explicit(static_cast<int>(std::string(x).size()), {{x, R("1")}}); }

// Law of the variables other than `on` in m given X_on = v.
ExplicitMeasure given(const ExplicitMeasure& m, int on, int v) { return condition(m, Assignment({on}, {v})); }

Rational expected_sum(const ExplicitMeasure& m) {
  Rational total = 0;
  for (int i = 1; i <= m.n(); ++i) total += oracle::mean(m, i);
  return total;
}

}  // namespace

TEST(CheckDominance, EqualMeasuresDominate) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = oracle::random_measure(1 + trial % 4, rng);
    EXPECT_TRUE(check_dominance(m, m).dominates);
  }
}

TEST(CheckDominance, PointMassesTheWrongWay) {
  const auto r = check_dominance(delta("11"), delta("00"));
  ASSERT_FALSE(r.dominates);
  ASSERT_TRUE(r.certificate);
  EXPECT_EQ(r.certificate->kind, CutKind::DownClosed);
  ASSERT_EQ(r.certificate->down_set, std::vector<Bits>{0});
  EXPECT_EQ(r.certificate->lower_mass, 0);
  EXPECT_EQ(r.certificate->upper_mass, 1);
  EXPECT_TRUE(verify_certificate(delta("11"), delta("00"), *r.certificate));
  EXPECT_EQ(r.max_flow, 0);
}

TEST(CheckDominance, NandConditionalsOnX2) {
  const auto nand3 = family_nand(3);
  EXPECT_TRUE(check_dominance(given(nand3, 2, 1), given(nand3, 2, 0)).dominates);
}

TEST(CheckDominance, DimensionMismatch) {
  try {
    check_dominance(delta("1"), delta("00"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(BuildCoupling, NandX2Example) {
  const auto nand3 = family_nand(3);
  const auto lower = given(nand3, 2, 1);
  const auto upper = given(nand3, 2, 0);
  EXPECT_EQ(lower, new_explicit(2, {{"10", R("1/2")}, {"01", R("1/2")}}));
  EXPECT_EQ(upper, new_explicit(2, {{"10", R("1/2")}, {"11", R("1/2")}}));
  const Coupling c = build_monotone_coupling(lower, upper, false);
  ASSERT_EQ(c.mass.size(), 2u);
  // Lexicographic by x: (01 -> 11), (10 -> 10).
  EXPECT_EQ(to_bitstring(c.mass[0].x, 2), "01");
  EXPECT_EQ(to_bitstring(c.mass[0].y, 2), "11");
  EXPECT_EQ(c.mass[0].p, R("1/2"));
  EXPECT_EQ(to_bitstring(c.mass[1].x, 2), "10");
  EXPECT_EQ(to_bitstring(c.mass[1].y, 2), "10");
  EXPECT_EQ(c.mass[1].p, R("1/2"));
  EXPECT_TRUE(verify_coupling(c));
  EXPECT_EQ(coupling_displacement(c), R("1/2"));
}

TEST(BuildCoupling, PointMassesPairIdentically) {
  const Coupling c = build_monotone_coupling(delta("101"), delta("101"), false);
  ASSERT_EQ(c.mass.size(), 1u);
  EXPECT_EQ(c.mass[0].x, c.mass[0].y);
  EXPECT_EQ(coupling_displacement(c), 0);
}

TEST(BuildCoupling, CoveringModeHallViolation) {
  const auto nand3 = family_nand(3);
  const auto lower = given(nand3, 1, 1);
  const auto upper = given(nand3, 1, 0);
  EXPECT_EQ(upper, delta("11"));
  EXPECT_TRUE(check_dominance(lower, upper).dominates);
  try {
    build_monotone_coupling(lower, upper, true);
    FAIL() << "expected DominanceFailure";
  } catch (const DominanceFailure& f) {
    const auto& cert = f.certificate();
    EXPECT_EQ(f.code(), ErrorCode::DominanceFails);
    EXPECT_EQ(cert.kind, CutKind::InfeasibilityCut);
    EXPECT_EQ(cert.targets, std::vector<Bits>{parse_bitstring("11", 2)});
    // 00 is the atom that cannot reach 11 in one step.
    for (Bits z : cert.down_set) EXPECT_NE(z, Bits{0});
    EXPECT_EQ(cert.lower_mass, R("2/3"));
    EXPECT_EQ(cert.upper_mass, 1);
    EXPECT_TRUE(verify_certificate(lower, upper, cert));
  }
}

TEST(BuildCoupling, AntiPairDisplacement) {
  const auto anti = family_anti_pair();
  const Coupling c = build_monotone_coupling(given(anti, 1, 1), given(anti, 1, 0), true);
  EXPECT_EQ(coupling_displacement(c), 1);
  EXPECT_TRUE(verify_coupling(c));
}

TEST(BuildCoupling, FailureThrowsDownClosedCertificate) {
  try {
    build_monotone_coupling(delta("1"), delta("0"), false);
    FAIL();
  } catch (const DominanceFailure& f) {
    EXPECT_EQ(f.certificate().kind, CutKind::DownClosed);
    EXPECT_TRUE(verify_certificate(delta("1"), delta("0"), f.certificate()));
  }
}

TEST(VerifyCertificate, RejectsTamperedCertificates) {
  auto cert = *check_dominance(delta("11"), delta("00")).certificate;
  cert.down_set = {parse_bitstring("10", 2)};  // not down-closed
  EXPECT_FALSE(verify_certificate(delta("11"), delta("00"), cert));
  auto cert2 = *check_dominance(delta("11"), delta("00")).certificate;
  cert2.upper_mass = R("1/2");
  EXPECT_FALSE(verify_certificate(delta("11"), delta("00"), cert2));
}

TEST(VerifyCoupling, RejectsBadSupportAndMarginals) {
  const auto nand3 = family_nand(3);
  Coupling c = build_monotone_coupling(given(nand3, 2, 1), given(nand3, 2, 0), false);
  Coupling swapped = c;
  std::swap(swapped.mass[0].y, swapped.mass[1].y);  // 01 -> 10 is not monotone
  EXPECT_FALSE(verify_coupling(swapped));
  Coupling short_mass = c;
  short_mass.mass.pop_back();
  EXPECT_FALSE(verify_coupling(short_mass));
}

// Brute-force oracle: dominance iff lower(A) <= upper(A) for every up-set A.
TEST(Properties, AgreesWithUpSetOracle) {
  std::mt19937_64 rng(2024);
  int failures = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int L = 1 + trial % 4;
    const auto lower = oracle::random_measure(L, rng, 4);
    const auto upper = oracle::random_measure(L, rng, 4);
    const auto r = check_dominance(lower, upper);
    EXPECT_EQ(r.dominates, oracle::dominates(oracle::law_of(lower), oracle::law_of(upper), L)) << trial;
    if (r.dominates) {
      const Coupling c = build_monotone_coupling(lower, upper, false);
      EXPECT_TRUE(verify_coupling(c));
      EXPECT_EQ(coupling_displacement(c), expected_sum(upper) - expected_sum(lower));
    } else {
      ++failures;
      ASSERT_TRUE(r.certificate);
      EXPECT_TRUE(verify_certificate(lower, upper, *r.certificate));
    }
  }
  EXPECT_GT(failures, 10);
}

TEST(Properties, CoveringModeAgreesWithHallOracle) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 120; ++trial) {
    const int L = 1 + trial % 3;
    const auto lower = oracle::random_measure(L, rng, 3);
    const auto upper = oracle::random_measure(L, rng, 3);
    const auto r = check_coupling_feasible(lower, upper, true);
    EXPECT_EQ(r.dominates, oracle::covering_feasible(oracle::law_of(lower), oracle::law_of(upper))) << trial;
    if (r.dominates) {
      const Coupling c = build_monotone_coupling(lower, upper, true);
      EXPECT_TRUE(verify_coupling(c));
      for (const auto& pair : c.mass) EXPECT_LE(weight(pair.y) - weight(pair.x), 1);
    } else {
      EXPECT_TRUE(verify_certificate(lower, upper, *r.certificate));
    }
  }
}

TEST(Properties, DeterministicConstruction) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = oracle::random_measure(3, rng);
    const Coupling a = build_monotone_coupling(m, m, false);
    const Coupling b = build_monotone_coupling(m, m, false);
    ASSERT_EQ(a.mass.size(), b.mass.size());
    for (std::size_t k = 0; k < a.mass.size(); ++k) {
      EXPECT_EQ(a.mass[k].x, b.mass[k].x);
      EXPECT_EQ(a.mass[k].y, b.mass[k].y);
      EXPECT_EQ(a.mass[k].p, b.mass[k].p);
    }
  }
}
