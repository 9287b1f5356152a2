// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "enriques/decompose.hpp"
#include "enriques/errors.hpp"
#include "enriques/invariants.hpp"
#include "enriques/isotropic_enum.hpp"
#include "enriques/verify.hpp"
#include "support.hpp"

using namespace enriques;
using enriques::test::cls;

namespace {

const EnriquesLattice& lat() { return EnriquesLattice::standard(); }

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) note << "; ";
      ok = false;
      note << what << " ";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.note << " exception: " << e.what();
  }
  if (!o.ok) ++failures;
  std::printf("%s [%d] %s (%.1f s)%s\n", o.ok ? "PASS" : "FAIL", id, title.c_str(), seconds_since(t0),
              o.note.str().c_str());
  std::fflush(stdout);
}

std::string pair2(std::int64_t g, std::int64_t a, std::int64_t b) {
  return "let E1,E2 = isotropic(E1.E2=" + std::to_string(g) + "); " + std::to_string(a) + "*E1 + " +
         std::to_string(b) + "*E2";
}

struct CaseC {
  std::int64_t n, phi;
  const char* expr;
};

const CaseC kCaseC[] = {
    {30, 5, "let A,B,C,D = isotropic(A.B=2, A.C=2, A.D=1, B.C=1, B.D=2, C.D=2); 2*A + B + C + D"},
    {22, 4, "let A,B,C,D = isotropic(A.B=2, A.C=1, A.D=1, B.C=1, B.D=1, C.D=1); 2*A + B + C + D"},
    {20, 4,
     "let A,B,C,D,E = isotropic(A.B=1, A.C=1, A.D=1, A.E=1, B.C=1, B.D=1, B.E=1, C.D=1, C.E=1, D.E=1); "
     "A + B + C + D + E"},
    {14, 3, "let A,B,C = isotropic(A.B=1, A.C=2, B.C=1); 2*A + B + C"},
    {12, 3, "let A,B = isotropic(A.B=3); 2*A + B"},
    {6, 2, "let A,B,C = isotropic(A.B=1, A.C=1, B.C=1); A + B + C"},
};

}  // namespace

int main() {
  SweepSpec sweep_spec;
  sweep_spec.region = oracle::Box{2};
  SweepReport sweep;

  criterion(1, "radius-2 sweep, all checks, >= 1000 classes, < 600 s", [&](Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    sweep = run_sweep(sweep_spec);
    const double t = seconds_since(t0);
    o.note << " tested=" << sweep.tested() << " failures=" << sweep.failures();
    for (auto c : all_checks()) {
      const auto it = sweep.counters.find(c);
      o.expect(it != sweep.counters.end() && it->second.failed == 0 && it->second.tested > 0,
               std::string(to_string(c)));
    }
    o.expect(sweep.counterexamples.empty(), "counterexamples");
    o.expect(sweep.tested() >= 1000, "tested < 1000");
    o.expect(t < 600, "runtime");
  });

  criterion(2, "case (c) pairs: gengon = floor(L^2/4)+2 = 2 phi - 1", [](Outcome& o) {
    for (const auto& c : kCaseC) {
      const auto r = generic_gonality(cls(c.expr));
      const std::string tag = "(" + std::to_string(c.n) + "," + std::to_string(c.phi) + ")";
      o.expect(r.L_squared == c.n && r.phi.value == c.phi, tag + " realization");
      o.expect(r.classification.case_tag == CaseTag::C, tag + " case");
      o.expect(r.gengon == c.n / 4 + 2 && r.gengon == 2 * c.phi - 1, tag + " gengon=" + std::to_string(r.gengon));
    }
  });

  criterion(3, "a E1 + b E2 with E1.E2 = 1: gengon = 2a and mingon interval", [](Outcome& o) {
    for (auto [a, b] : {std::pair<std::int64_t, std::int64_t>{3, 3}, {3, 4}, {3, 5}, {4, 6}}) {
      const auto r = generic_gonality(cls(pair2(1, a, b)));
      const std::string tag = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
      o.expect(r.gengon == 2 * a, tag + " gengon=" + std::to_string(r.gengon));
      const std::int64_t lo = b == a ? 2 * a - 2 : 2 * a - 1;
      o.expect(r.mingon.lo == lo && r.mingon.hi == 2 * a, tag + " mingon");
    }
  });

  criterion(4, "a (E1 + E2) with E1.E2 = 2, a in {5, 6}", [](Outcome& o) {
    for (std::int64_t a : {5, 6}) {
      const auto r = generic_gonality(cls(pair2(2, a, a)));
      const std::string tag = "a=" + std::to_string(a);
      o.expect(r.phi.value == 2 * a, tag + " phi");
      o.expect(r.mu.kind == MuKind::Exact && r.mu.value == 4 * a - 2, tag + " mu");
      o.expect(r.gengon == 4 * a - 2, tag + " gengon");
      o.expect(r.mingon.lo == 4 * a - 4 && r.mingon.hi == 4 * a - 2, tag + " mingon");
    }
  });

  criterion(5, "2D with D^2 = 10, phi(D) = 3: mu = 2 phi = 12", [](Outcome& o) {
    const LatticeClass D = cls("let E1,E2,E3 = isotropic(E1.E2=2, E1.E3=2, E2.E3=1); E1 + E2 + E3");
    o.expect(lat().norm(D) == 10 && min_pairing_isotropic(D).value == 3, "D");
    const LatticeClass L = 2 * D;
    const auto m = mu_capped(L);
    const auto phi = min_pairing_isotropic(L).value;
    o.note << " mu=" << m.value << " phi=" << phi;
    o.expect(m.kind == MuKind::Exact && m.value == 12 && m.value == 2 * phi, "mu");
  });

  criterion(6, "enumerator equals box oracle, 50 anchors, (s,c) in {0,4}x{1..8}, < 300 s", [](Outcome& o) {
    OracleSpec s;
    s.radius = 2;
    s.anchors = 50;
    s.norms = {0, 4};
    s.max_pairing = 8;
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = oracle_check(s);
    const double t = seconds_since(t0);
    o.note << " queries=" << r.queries << " solutions=" << r.solutions << " mismatches=" << r.mismatches.size();
    o.expect(r.anchors.size() == 50, "anchors");
    o.expect(r.queries == 50 * 2 * 8, "queries");
    o.expect(r.passed(), "mismatch");
    o.expect(t < 300, "runtime");
  });

  criterion(7, "200 random decompositions verify with n <= 10; ten_frame on >= 5 D", [](Outcome& o) {
    std::size_t ok = 0;
    for (const auto& L : test::random_effective(200, 2, 20260101)) {
      const auto d = isotropic_decompose(L);
      if (verify_decomposition(lat(), L, d) && d.classes.size() <= 10) ++ok;
    }
    o.note << " decompositions=" << ok << "/200";
    o.expect(ok == 200, "decompositions");

    // D^2 = 10 with D.(e+f) = 6 and phi(D) = 3
    std::set<LatticeClass> frames;
    const auto cands = enumerate(EnumQuery{LatticeClass::e() + LatticeClass::f(), 10, 6, false, true});
    for (const auto& D : cands.solutions) {
      if (frames.size() >= 8) break;
      if (min_pairing_isotropic(D).value != 3) continue;
      const auto f = ten_frame(D);
      if (verify_frame(lat(), D, f)) frames.insert(D);
    }
    o.note << " frames=" << frames.size();
    o.expect(frames.size() >= 5, "frames");
  });

  criterion(8, "extremal witnesses coherent with types in the radius-2 sweep", [&](Outcome& o) {
    const auto it = sweep.counters.find(Check::Coherence);
    o.expect(it != sweep.counters.end(), "no coherence counter");
    if (it == sweep.counters.end()) return;
    o.note << " tested=" << it->second.tested << " failed=" << it->second.failed;
    o.expect(it->second.tested >= 1000 && it->second.failed == 0, "coherence");
    for (const char* k : {"type mu1", "type mu2", "type mu3", "type 2D"})
      o.expect(sweep.coverage.count(k) && sweep.coverage.at(k) > 0, std::string("no ") + k);
  });

  criterion(9, "fixture file resolves to the stated (L^2, phi)", [](Outcome& o) {
    const auto cases = test::load_fixtures(test::fixture_path());
    std::size_t bad = 0;
    for (const auto& c : cases) {
      try {
        const LatticeClass L = cls(c.expression);
        if (lat().norm(L) != c.L_squared || min_pairing_isotropic(L).value != c.phi) {
          ++bad;
          o.note << " " << c.id;
        }
      } catch (const Error& e) {
        ++bad;
        o.note << " " << c.id << ": " << e.what();
      }
    }
    o.note << " entries=" << cases.size() << " failures=" << bad;
    o.expect(cases.size() >= 21 && bad == 0, "fixtures");
  });

  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
