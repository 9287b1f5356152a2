#include <gtest/gtest.h>

#include <algorithm>

#include "enriques/errors.hpp"
#include "enriques/invariants.hpp"
#include "enriques/isotropic_enum.hpp"
#include "support.hpp"

using namespace enriques;
using enriques::test::cls;

namespace {

const EnriquesLattice& lat() { return EnriquesLattice::standard(); }

std::string pair2(std::int64_t a, std::int64_t b, std::int64_t h = 1) {
  return "let E1,E2 = isotropic(E1.E2=" + std::to_string(a) + "); " + std::to_string(h) + "*E1 + " +
         std::to_string(b) + "*E2";
}
std::string doubled(std::int64_t h) { return "let E1,E2 = isotropic(E1.E2=2); " + std::to_string(h) + "*(E1+E2)"; }
const char* kTwoD = "let E1,E2,E3 = isotropic(E1.E2=2, E1.E3=2, E2.E3=1); 2*(E1+E2+E3)";
const char* kG6Phi2 = "let E,E1,E2 = isotropic(E.E1=1, E.E2=1, E1.E2=1); 2*E + E1 + E2";
const char* kG6Phi3 = "let E,E1,E2 = isotropic(E.E1=1, E.E2=2, E1.E2=2); E + E1 + E2";

TEST(QuarterBound, Floor) {
  EXPECT_EQ(quarter_bound(30), 9);
  EXPECT_EQ(quarter_bound(16), 6);
  EXPECT_EQ(quarter_bound(2), 2);
}

TEST(Mu, DoubledPairIsTwoPhiMinusTwo) {
  const auto m = mu_capped(cls(doubled(2)));
  EXPECT_EQ(m.kind, MuKind::Exact);
  EXPECT_EQ(m.value, 6);
  ASSERT_TRUE(m.witness);
  EXPECT_EQ(m.witness->value, 6);
}

TEST(Mu, TwoDIsTwelve) {
  const LatticeClass L = cls(kTwoD);
  ASSERT_EQ(lat().norm(L), 40);
  const auto m = mu_capped(L);
  EXPECT_EQ(m.kind, MuKind::Exact);
  EXPECT_EQ(m.value, 12);
  EXPECT_EQ(min_pairing_isotropic(L).value, 6);
}

TEST(Mu, NormTenIsAtLeastFive) {
  for (const char* e : {kG6Phi2, kG6Phi3}) {
    const LatticeClass L = cls(e);
    ASSERT_EQ(lat().norm(L), 10);
    const auto m = mu_capped(L, 20);
    EXPECT_GE(m.value, 5) << e;
  }
}

TEST(Mu, CapBelowTwoPhiIsRejected) {
  const LatticeClass L = cls(doubled(2));  // phi = 4
  EXPECT_THROW(mu_capped(L, 7), CapTooSmall);
  EXPECT_NO_THROW(mu_capped(L, 8));
}

TEST(Mu, LowerBoundOnlySemantics) {
  const LatticeClass L = cls(pair2(1, 5, 3));  // phi = 3, no B below the cap
  const auto m = mu_capped(L);
  EXPECT_EQ(m.kind, MuKind::LowerBoundOnly);
  EXPECT_EQ(m.cap_used, 8);
  EXPECT_EQ(m.value, 7);
  EXPECT_FALSE(m.witness);
}

// (L^2, phi) = (4, 2): stated as mu = 3 with the proof omitted.
TEST(Mu, ExceptionalFourTwoIsThree) {
  const LatticeClass L = cls("let E1,E2 = isotropic(E1.E2=2); E1 + E2");
  ASSERT_EQ(lat().norm(L), 4);
  ASSERT_EQ(min_pairing_isotropic(L).value, 2);
  const auto m = mu_capped(L, 6);
  EXPECT_EQ(m.kind, MuKind::Exact);
  EXPECT_EQ(m.value, 3);
  EXPECT_EQ(generic_gonality(L).gengon, 3);
}

TEST(Gonality, PaperValues) {
  EXPECT_EQ(generic_gonality(cls(doubled(2))).gengon, 6);
  EXPECT_EQ(generic_gonality(cls(kG6Phi2)).gengon, 4);
  EXPECT_EQ(generic_gonality(cls(doubled(5))).gengon, 18);
  for (auto [a, b] : {std::pair{3, 3}, {3, 4}, {3, 5}, {4, 6}})
    EXPECT_EQ(generic_gonality(cls(pair2(1, b, a))).gengon, 2 * a) << a << "," << b;
}

TEST(Gonality, ReportFields) {
  const LatticeClass L = cls(doubled(2));
  const auto r = generic_gonality(L);
  EXPECT_EQ(r.L, L);
  EXPECT_EQ(r.L_squared, 16);
  EXPECT_EQ(r.phi.value, 4);
  EXPECT_EQ(r.quarter_bound, 6);
  EXPECT_EQ(r.gengon, std::min({2 * r.phi.value, r.mu.value, r.quarter_bound}));
  EXPECT_EQ(r.classification.case_tag, CaseTag::A);
  EXPECT_EQ(r.classification.type, (TypeTag{TypeKind::Mu1, 2}));
}

TEST(Gonality, RejectsIneffective) {
  EXPECT_THROW(generic_gonality(-cls(doubled(1))), InvalidInput);
  EXPECT_THROW(generic_gonality(LatticeClass::e()), InvalidInput);
}

TEST(Classify, CaseC) {
  const LatticeClass L =
      cls("let E,E1,E2,E3 = isotropic(E.E1=1, E.E2=1, E.E3=3, E1.E2=1, E1.E3=2, E2.E3=2); 2*E + E1 + E2 + E3");
  const auto r = generic_gonality(L);
  ASSERT_EQ(r.L_squared, 30);
  ASSERT_EQ(r.phi.value, 5);
  EXPECT_EQ(r.classification.case_tag, CaseTag::C);
  EXPECT_EQ(r.gengon, 9);
  EXPECT_EQ(r.classification.table_gengon, 9);
}

TEST(Classify, DoubledPairIsMu1) {
  for (std::int64_t h = 1; h <= 3; ++h) {
    const auto c = case_classify(cls(doubled(h)));
    EXPECT_EQ(c.type, (TypeTag{TypeKind::Mu1, h}));
    EXPECT_EQ(c.case_tag, CaseTag::A);
  }
}

TEST(Classify, TwoDIsNotCaseB) {
  const LatticeClass L = cls(kTwoD);
  EXPECT_TRUE(is_two_d(lat(), L));
  const auto c = case_classify(L);
  EXPECT_EQ(c.type.kind, TypeKind::TwoD);
  EXPECT_NE(c.case_tag, CaseTag::B);
}

TEST(Classify, Mu2AndMu3) {
  // h(E1+E2)+E3 and (h+1)E1 + hE2 + E3 with pairings (2, 2, 1)
  const char* iso = "let E1,E2,E3 = isotropic(E1.E2=2, E1.E3=2, E2.E3=1); ";
  for (std::int64_t h = 1; h <= 2; ++h) {
    const auto h_s = std::to_string(h), h1 = std::to_string(h + 1);
    const auto c2 = case_classify(cls(iso + h_s + "*(E1+E2) + E3"));
    EXPECT_EQ(c2.type, (TypeTag{TypeKind::Mu2, h}));
    const auto c3 = case_classify(cls(iso + h1 + "*E1 + " + h_s + "*E2 + E3"));
    EXPECT_EQ(c3.type, (TypeTag{TypeKind::Mu3, h}));
  }
}

TEST(Mingon, PaperExamples) {
  // a E1 + b E2, E1.E2 = 1
  EXPECT_EQ(mingon_bounds(cls(pair2(1, 4, 3))), (MingonBounds{5, 6, true}));
  EXPECT_EQ(mingon_bounds(cls(pair2(1, 6, 4))), (MingonBounds{7, 8, true}));
  EXPECT_EQ(mingon_bounds(cls(pair2(1, 3, 3))), (MingonBounds{4, 6, false}));
  // a (E1 + E2), E1.E2 = 2
  EXPECT_EQ(mingon_bounds(cls(doubled(5))), (MingonBounds{16, 18, false}));
  EXPECT_EQ(mingon_bounds(cls(doubled(6))), (MingonBounds{20, 22, false}));
}

TEST(TableGengon, Rows) {
  EXPECT_EQ(table_gengon(16, 4, CaseTag::A), 6);
  EXPECT_EQ(table_gengon(10, 3, CaseTag::B), 4);  // phi in {3, 4}
  EXPECT_EQ(table_gengon(18, 4, CaseTag::B), 6);
  EXPECT_EQ(table_gengon(28, 5, CaseTag::B), 9);
  EXPECT_EQ(table_gengon(6, 2, CaseTag::C), 3);
  EXPECT_EQ(table_gengon(26, 4, CaseTag::Generic), 8);
  EXPECT_EQ(table_gengon(4, 2, CaseTag::A), 3);
}

class InvariantProperty : public ::testing::Test {
 protected:
  static const std::vector<LatticeClass>& sample() {
    static const auto s = test::random_effective(120, 2, 99);
    return s;
  }
};

TEST_F(InvariantProperty, MuFloorAndSplitting) {
  for (const auto& L : sample()) {
    const auto r = generic_gonality(L);
    const std::int64_t phi = r.phi.value;
    ASSERT_GE(r.mu.value, 2 * phi - 2) << L;
    if (r.mu.kind == MuKind::Exact && r.mu.value < 2 * phi) {
      ASSERT_TRUE(r.mu.witness->splitting) << L;
      const auto& [F1, F2] = *r.mu.witness->splitting;
      ASSERT_EQ(lat().pairing(F1, F2), 2);
      ASSERT_EQ(lat().pairing(F1, L), phi);
      const auto f2 = lat().pairing(F2, L);
      ASSERT_TRUE(f2 == phi || f2 == phi + 1) << L;
      ASSERT_EQ(F1 + F2, r.mu.witness->cls);
    }
  }
}

TEST_F(InvariantProperty, FormulaTableGapAndMingon) {
  for (const auto& L : sample()) {
    const auto r = generic_gonality(L);
    const std::int64_t phi = r.phi.value, n = r.L_squared;
    ASSERT_FALSE(phi * phi < n && n < phi * phi + phi - 2) << L;
    ASSERT_EQ(r.gengon, r.classification.table_gengon) << L;
    const std::int64_t mu = r.mu.kind == MuKind::Exact ? r.mu.value : r.mu.cap_used;
    ASSERT_EQ(r.gengon, std::min({2 * phi, mu, quarter_bound(n)})) << L;
    ASSERT_EQ(r.mingon.hi, r.gengon);
    ASSERT_TRUE(r.mingon.lo == r.gengon - 2 || (r.mingon.lo == r.gengon - 1 && r.mingon.lower_excluded));
  }
}

}  // namespace
