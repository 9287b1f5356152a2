#include <gtest/gtest.h>

#include "enriques/errors.hpp"
#include "enriques/isotropic_enum.hpp"
#include "enriques/oracle.hpp"
#include "support.hpp"

using namespace enriques;
using enriques::test::cls;
using enriques::test::kE;
using enriques::test::kF;

namespace {

const EnriquesLattice& lat() { return EnriquesLattice::standard(); }

TEST(Enumerate, UnitPairingWithHyperbolicAnchor) {
  const auto r = enumerate(EnumQuery{kE + kF, 0, 1, true, true});
  ASSERT_EQ(r.solutions.size(), 2u);
  EXPECT_EQ(r.solutions[0], kF);
  EXPECT_EQ(r.solutions[1], kE);
  EXPECT_TRUE(r.complete);
}

TEST(Enumerate, ZeroPairingIsRejected) {
  EXPECT_THROW(enumerate(EnumQuery{kE + kF, 0, 0, false, false}), InfeasibleQuery);
}

TEST(Enumerate, HodgeInfeasibleQueryIsRejected) {
  // s L^2 = 4 * 2 > 1 = c^2
  EXPECT_THROW(enumerate(EnumQuery{kE + kF, 4, 1, false, false}), InfeasibleQuery);
}

TEST(Enumerate, NonPositiveAnchorIsRejected) {
  EXPECT_THROW(CosetEnumerator(lat(), kE), InvalidAnchor);
  EXPECT_THROW(CosetEnumerator(lat(), LatticeClass::unit(2)), InvalidAnchor);
}

TEST(Enumerate, NothingBelowPhi) {
  const LatticeClass L = cls("let E1,E2 = isotropic(E1.E2=2); 2*(E1+E2)");
  ASSERT_EQ(lat().norm(L), 16);
  EXPECT_TRUE(enumerate(EnumQuery{L, 0, 3, false, false}).solutions.empty());
  EXPECT_FALSE(enumerate(EnumQuery{L, 0, 4, true, true}).solutions.empty());
}

// Counts frozen from the certified box oracle.
struct Frozen {
  const char* anchor;
  std::int64_t s, c;
  std::size_t all, primitive_effective;
  const char* first;
};

const Frozen kFrozen[] = {
    {"v[1,1,0,0,0,0,0,0,0,0]", 0, 2, 242, 240, "v[1,1,-2,-3,-4,-6,-5,-4,-3,-2]"},
    {"v[1,1,0,0,0,0,0,0,0,0]", 0, 3, 4322, 4320, "v[1,2,-4,-5,-7,-10,-8,-6,-4,-2]"},
    {"v[1,1,0,0,0,0,0,0,0,0]", 0, 4, 30962, 30720, "v[1,3,-4,-6,-8,-12,-10,-8,-6,-3]"},
    {"v[1,1,0,0,0,0,0,0,0,0]", 4, 3, 2, 2, "v[1,2,0,0,0,0,0,0,0,0]"},
    {"v[1,1,0,0,0,0,0,0,0,0]", 4, 4, 2640, 2640, "v[1,3,-2,-3,-4,-6,-5,-4,-3,-2]"},
    {"v[1,2,0,0,0,0,0,0,0,0]", 0, 2, 2, 1, "v[1,0,0,0,0,0,0,0,0,0]"},
    {"v[1,2,0,0,0,0,0,0,0,0]", 0, 6, 35042, 34800, "v[1,4,-5,-8,-10,-15,-12,-9,-6,-3]"},
    {"v[1,2,0,0,0,0,0,0,0,0]", 4, 5, 241, 241, "v[1,3,-2,-3,-4,-6,-5,-4,-3,-2]"},
    {"v[2,3,0,0,0,0,0,0,0,0]", 0, 1, 0, 0, ""},
    {"v[2,3,0,0,0,0,0,0,0,0]", 0, 4, 1, 0, ""},
    {"v[2,3,0,0,0,0,0,0,0,0]", 0, 5, 240, 240, "v[1,1,-2,-3,-4,-6,-5,-4,-3,-2]"},
    {"v[2,1,1,0,0,0,0,0,0,0]", 0, 4, 30962, 30720, "v[1,1,-2,-3,-3,-5,-4,-3,-2,-1]"},
    {"v[2,1,1,0,0,0,0,0,0,0]", 4, 3, 2, 2, "v[3,1,1,0,0,0,0,0,0,0]"},
    {"v[3,3,-5,-8,-10,-15,-12,-9,-6,-3]", 0, 3, 10, 10, "v[0,1,0,0,0,0,0,0,0,0]"},
    {"v[3,3,-5,-8,-10,-15,-12,-9,-6,-3]", 0, 6, 850, 840, "v[1,1,-1,0,-1,-1,-1,-1,-1,-1]"},
    {"v[4,4,-8,-10,-14,-20,-16,-12,-8,-4]", 0, 4, 18, 18, "v[0,1,0,0,0,0,0,0,0,0]"},
    {"v[4,4,-8,-10,-14,-20,-16,-12,-8,-4]", 0, 5, 0, 0, ""},
};

TEST(Enumerate, FrozenOracleCounts) {
  for (const auto& f : kFrozen) {
    SCOPED_TRACE(std::string(f.anchor) + " s=" + std::to_string(f.s) + " c=" + std::to_string(f.c));
    const LatticeClass L = cls(f.anchor);
    const auto all = enumerate(EnumQuery{L, f.s, f.c, false, false});
    const auto pe = enumerate(EnumQuery{L, f.s, f.c, true, true});
    EXPECT_EQ(all.solutions.size(), f.all);
    EXPECT_EQ(pe.solutions.size(), f.primitive_effective);
    if (*f.first) {
      ASSERT_FALSE(pe.solutions.empty());
      EXPECT_EQ(pe.solutions.front().str(), f.first);
    }
  }
}

TEST(EnumerateProperty, SolutionsSatisfyQueryAndHodge) {
  for (const auto& L : test::random_effective(30, 2, 11)) {
    const CosetEnumerator e(lat(), L);
    const std::int64_t n = lat().norm(L);
    for (std::int64_t s : {0, 2, 4})
      for (std::int64_t c = 1; c <= 5; ++c) {
        if (s * n > c * c) continue;
        const auto r = e.enumerate(s, c, false, false);
        for (std::size_t i = 0; i < r.solutions.size(); ++i) {
          const auto& x = r.solutions[i];
          ASSERT_EQ(lat().norm(x), s);
          ASSERT_EQ(lat().pairing(x, L), c);
          ASSERT_LE(static_cast<i128>(s) * n, static_cast<i128>(c) * c);
          if (i > 0) ASSERT_LT(r.solutions[i - 1], x);
        }
      }
  }
}

TEST(EnumerateProperty, MatchesOracleOnSmallQueries) {
  for (const auto& L : test::random_effective(12, 2, 5)) {
    for (std::int64_t s : {0, 4})
      for (std::int64_t c = 1; c <= 6; ++c) {
        if (s * lat().norm(L) > c * c) continue;
        const auto r = enumerate(EnumQuery{L, s, c, false, false});
        ASSERT_EQ(r.solutions, oracle::certified_solutions(lat(), L, s, c))
            << L << " s=" << s << " c=" << c;
      }
  }
}

TEST(Phi, PaperExamples) {
  // h (E1 + E2) with E1.E2 = 2: phi = 2h
  EXPECT_EQ(min_pairing_isotropic(cls("let E1,E2 = isotropic(E1.E2=2); 3*(E1+E2)")).value, 6);
  // a E1 + b E2 with E1.E2 = 1, a <= b: phi = a, realised by E2
  const auto w = parse_class("let E1,E2 = isotropic(E1.E2=1); 3*E1 + 5*E2");
  const auto phi = min_pairing_isotropic(w.resolved);
  EXPECT_EQ(phi.value, 3);
  EXPECT_EQ(phi.cls, w.bindings.at("E2"));
  EXPECT_EQ(min_pairing_isotropic(kE + kF).value, 1);
}

TEST(Phi, RejectsIneffective) {
  EXPECT_THROW(min_pairing_isotropic(-(kE + kF)), InvalidInput);
  EXPECT_THROW(min_pairing_isotropic(kE), InvalidInput);
}

TEST(PhiProperty, BoundAndMinimality) {
  for (const auto& L : test::random_effective(60, 2, 3)) {
    const auto w = min_pairing_isotropic(L);
    const std::int64_t n = lat().norm(L);
    ASSERT_LE(w.value * w.value, n) << L;
    ASSERT_EQ(lat().norm(w.cls), 0);
    ASSERT_EQ(lat().pairing(w.cls, L), w.value);
    ASSERT_TRUE(lat().is_primitive(w.cls));
    ASSERT_TRUE(lat().is_num_effective(w.cls));
    for (std::int64_t c = 1; c < w.value; ++c)
      ASSERT_TRUE(enumerate(EnumQuery{L, 0, c, true, true}).solutions.empty()) << L << " c=" << c;
  }
}

TEST(Enumerate, CountAgreesWithForEach) {
  const CosetEnumerator e(lat(), kE + kF);
  std::uint64_t k = 0;
  e.for_each(0, 3, [&](const LatticeClass&) { ++k; });
  EXPECT_EQ(k, e.count(0, 3));
  EXPECT_EQ(k, 4322u);
}

}  // namespace
