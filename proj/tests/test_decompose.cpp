#include <gtest/gtest.h>

#include <set>

#include "enriques/decompose.hpp"
#include "enriques/errors.hpp"
#include "enriques/invariants.hpp"
#include "enriques/isotropic_enum.hpp"
#include "support.hpp"

using namespace enriques;
using enriques::test::cls;

namespace {

const EnriquesLattice& lat() { return EnriquesLattice::standard(); }

const char* kTriple = "let E1,E2,E3 = isotropic(E1.E2=2, E1.E3=2, E2.E3=1); ";

GramPattern pattern(std::vector<std::int64_t> a, std::vector<std::vector<std::int64_t>> g) {
  return GramPattern{std::move(a), std::move(g)};
}

TEST(Decompose, AlreadyDecomposed) {
  const auto w = parse_class("let E1,E2 = isotropic(E1.E2=1); 3*E1 + 5*E2");
  const auto d = isotropic_decompose(w.resolved);
  EXPECT_EQ(d.pattern, Pattern::AllOnes);
  ASSERT_EQ(d.classes.size(), 2u);
  std::multiset<std::int64_t> coeffs(d.coefficients.begin(), d.coefficients.end());
  EXPECT_EQ(coeffs, (std::multiset<std::int64_t>{3, 5}));
  EXPECT_TRUE(verify_decomposition(lat(), w.resolved, d));
}

TEST(Decompose, Mu1IsOneDoubleWithEqualCoefficients) {
  for (std::int64_t h = 1; h <= 3; ++h) {
    const LatticeClass L = cls("let E1,E2 = isotropic(E1.E2=2); " + std::to_string(h) + "*(E1+E2)");
    const auto d = isotropic_decompose(L);
    EXPECT_EQ(d.pattern, Pattern::OneDouble);
    EXPECT_EQ(d.coefficients, (std::vector<std::int64_t>{h, h}));
    EXPECT_TRUE(verify_decomposition(lat(), L, d));
  }
}

TEST(Decompose, IsotropicInput) {
  const LatticeClass L = 3 * LatticeClass::e();
  const auto d = isotropic_decompose(L);
  EXPECT_EQ(d.coefficients, (std::vector<std::int64_t>{3}));
  EXPECT_EQ(d.classes, (std::vector<LatticeClass>{LatticeClass::e()}));
}

TEST(Decompose, RejectsIneffective) {
  EXPECT_THROW(isotropic_decompose(-LatticeClass::e()), InvalidInput);
  EXPECT_THROW(isotropic_decompose(LatticeClass::unit(3)), InvalidInput);
}

TEST(DecomposeProperty, RandomClassesVerify) {
  for (const auto& L : test::random_effective(80, 2, 4242)) {
    const auto d = isotropic_decompose(L);
    std::string why;
    ASSERT_TRUE(verify_decomposition(lat(), L, d, &why)) << L << ": " << why;
    ASSERT_LE(d.classes.size(), 10u);
  }
}

TEST(DecomposeProperty, ShapeSearchAgreesOnExistence) {
  for (const auto& L : test::random_effective(15, 2, 77)) {
    const auto d = shape_search_decompose(lat(), L);
    ASSERT_TRUE(d) << L;
    ASSERT_TRUE(verify_decomposition(lat(), L, *d)) << L;
  }
}

TEST(VerifyDecomposition, CatchesBadWitnesses) {
  const auto w = parse_class("let E1,E2 = isotropic(E1.E2=1); 3*E1 + 5*E2");
  Decomposition d = isotropic_decompose(w.resolved);
  Decomposition wrong_sum = d;
  wrong_sum.coefficients[0] += 1;
  std::string why;
  EXPECT_FALSE(verify_decomposition(lat(), w.resolved, wrong_sum, &why));
  EXPECT_FALSE(why.empty());
  Decomposition wrong_pattern = d;
  wrong_pattern.pattern = Pattern::OneDouble;
  EXPECT_FALSE(verify_decomposition(lat(), w.resolved, wrong_pattern));
}

TEST(TenFrame, SumOfTriple) {
  const LatticeClass D = cls(std::string(kTriple) + "E1 + E2 + E3");
  ASSERT_EQ(lat().norm(D), 10);
  const auto f = ten_frame(D);
  LatticeClass sum;
  for (const auto& F : f.classes) sum += F;
  EXPECT_EQ(sum, 3 * D);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = i + 1; j < 10; ++j) EXPECT_EQ(lat().pairing(f.classes[i], f.classes[j]), 1);
  EXPECT_TRUE(verify_frame(lat(), D, f));
}

TEST(TenFrame, RejectsWrongPhi) {
  const LatticeClass D = cls("let E,E1,E2 = isotropic(E.E1=1, E.E2=1, E1.E2=1); 2*E + E1 + E2");
  ASSERT_EQ(lat().norm(D), 10);
  EXPECT_THROW(ten_frame(D), InvalidInput);
  EXPECT_THROW(ten_frame(LatticeClass::e() + LatticeClass::f()), InvalidInput);
}

TEST(SearchPattern, LowGenusLemmas) {
  // (2,1,1) with E.E1 = E1.E2 = 2, E.E2 = 1 on L^2 = 16, phi = 3
  const LatticeClass L16 = cls("let E,E1,E2 = isotropic(E.E1=2, E1.E2=2, E.E2=1); 2*E + E1 + E2");
  const auto p16 = pattern({2, 1, 1}, {{0, 2, 1}, {2, 0, 2}, {1, 2, 0}});
  const auto m16 = search_pattern(lat(), L16, p16);
  ASSERT_TRUE(m16);
  EXPECT_TRUE(verify_match(lat(), L16, p16, *m16));

  // (3,1,1) all pairs 1 on L^2 = 14, phi = 2
  const LatticeClass L14 = cls("let E,E1,E2 = isotropic(E.E1=1, E.E2=1, E1.E2=1); 3*E + E1 + E2");
  const auto p14 = pattern({3, 1, 1}, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  const auto m14 = search_pattern(lat(), L14, p14);
  ASSERT_TRUE(m14);
  EXPECT_TRUE(verify_match(lat(), L14, p14, *m14));

  // (2,1,1) all pairs 1 on L^2 = 10, phi = 2
  const LatticeClass L10 = cls("let E,E1,E2 = isotropic(E.E1=1, E.E2=1, E1.E2=1); 2*E + E1 + E2");
  const auto p10 = pattern({2, 1, 1}, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  const auto m10 = search_pattern(lat(), L10, p10);
  ASSERT_TRUE(m10);
  EXPECT_TRUE(verify_match(lat(), L10, p10, *m10));

  EXPECT_EQ(min_pairing_isotropic(L16).value, 3);
  EXPECT_EQ(min_pairing_isotropic(L14).value, 2);
  EXPECT_EQ(min_pairing_isotropic(L10).value, 2);
}

TEST(SearchPattern, ImpossiblePatternIsNotFound) {
  // a single isotropic summand cannot produce a class of positive square
  const LatticeClass L = LatticeClass::e() + LatticeClass::f();
  EXPECT_FALSE(search_pattern(lat(), L, pattern({1}, {{0}})));
}

TEST(SearchPattern, RejectsMalformedPatterns) {
  const LatticeClass L = LatticeClass::e() + LatticeClass::f();
  EXPECT_THROW(search_pattern(lat(), L, pattern({}, {})), InvalidPattern);
  EXPECT_THROW(search_pattern(lat(), L, pattern({1, 1}, {{1, 1}, {1, 0}})), InvalidPattern);
  EXPECT_THROW(search_pattern(lat(), L, pattern({1, 1}, {{0, -1}, {-1, 0}})), InvalidPattern);
  EXPECT_THROW(search_pattern(lat(), L, pattern({1, 1}, {{0, 1}, {2, 0}})), InvalidPattern);
  EXPECT_THROW(search_pattern(lat(), L, pattern({1, 0}, {{0, 1}, {1, 0}})), InvalidPattern);
  EXPECT_THROW(search_pattern(lat(), L, pattern({1, 1}, {{0, 1}})), InvalidPattern);
}

TEST(Extremal, CaseI) {
  const LatticeClass L = cls("let E1,E2 = isotropic(E1.E2=2); 3*(E1+E2)");
  const auto x = extremal_decompose(L);
  EXPECT_EQ(x.tag, ExtremalTag::I);
  EXPECT_EQ(x.h, 3);
  EXPECT_FALSE(x.E3);
  EXPECT_TRUE(verify_extremal(lat(), L, x));
}

TEST(Extremal, CaseIIb) {
  const LatticeClass L = cls(std::string(kTriple) + "2*E1 + E2 + E3");
  const std::int64_t phi = min_pairing_isotropic(L).value;
  ASSERT_EQ(phi, 4);
  ASSERT_EQ(lat().norm(L), phi * phi + phi - 2);
  const auto x = extremal_decompose(L);
  EXPECT_EQ(x.tag, ExtremalTag::IIb);
  EXPECT_EQ(x.h, 1);
  EXPECT_TRUE(verify_extremal(lat(), L, x));
}

TEST(Extremal, CaseIIa) {
  const LatticeClass L = cls(std::string(kTriple) + "2*(E1 + E2) + E3");
  const auto x = extremal_decompose(L);
  EXPECT_EQ(x.tag, ExtremalTag::IIa);
  EXPECT_EQ(x.h, 2);
  EXPECT_TRUE(verify_extremal(lat(), L, x));
}

TEST(Extremal, CaseIIc) {
  const LatticeClass L = cls(std::string(kTriple) + "2*(E1 + E2 + E3)");
  ASSERT_EQ(lat().norm(L), 40);
  ASSERT_EQ(min_pairing_isotropic(L).value, 6);
  const auto x = extremal_decompose(L);
  EXPECT_EQ(x.tag, ExtremalTag::IIc);
  EXPECT_TRUE(verify_extremal(lat(), L, x));
}

TEST(Extremal, OutsideHypothesis) {
  // L^2 = 30 > 3^2 + 3 - 2
  EXPECT_THROW(extremal_decompose(cls("let E1,E2 = isotropic(E1.E2=1); 3*E1 + 5*E2")), InvalidInput);
}

TEST(ExtremalProperty, CoherentWithTypes) {
  for (const auto& L : test::random_effective(200, 2, 8)) {
    const std::int64_t phi = min_pairing_isotropic(L).value, n = lat().norm(L);
    if (n != phi * phi && n != phi * phi + phi - 2) continue;
    const auto x = extremal_decompose(L);
    ASSERT_TRUE(verify_extremal(lat(), L, x)) << L;
    const auto t = case_classify(L).type.kind;
    switch (x.tag) {
      case ExtremalTag::I: ASSERT_EQ(t, TypeKind::Mu1) << L; break;
      case ExtremalTag::IIa: ASSERT_EQ(t, TypeKind::Mu2) << L; break;
      case ExtremalTag::IIb: ASSERT_EQ(t, TypeKind::Mu3) << L; break;
      case ExtremalTag::IIc: ASSERT_EQ(t, TypeKind::TwoD) << L; break;
    }
  }
}

TEST(Names, RoundTrip) {
  for (auto p : {Pattern::AllOnes, Pattern::OneDouble, Pattern::TwoDoubles})
    EXPECT_EQ(pattern_from_string(to_string(p)), p);
  for (auto t : {ExtremalTag::I, ExtremalTag::IIa, ExtremalTag::IIb, ExtremalTag::IIc})
    EXPECT_EQ(extremal_tag_from_string(to_string(t)), t);
  EXPECT_THROW(pattern_from_string("nope"), InvalidInput);
}

}  // namespace
