#include "enriques/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <boost/sort/spreadsort/integer_sort.hpp>

#include "enriques/decompose.hpp"
#include "enriques/expression.hpp"
#include "enriques/invariants.hpp"
#include "enriques/isotropic_enum.hpp"

namespace enriques {

namespace {

using Clock = std::chrono::steady_clock;

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [0, n) on `threads` workers, each with its own index.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body body) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&](unsigned w) {
    try {
      for (std::size_t i = next++; i < n; i = next++) body(w, i);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next = n;
    }
  };
  if (threads <= 1 || n <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

std::string pair_str(std::int64_t n, std::int64_t phi) {
  return "(L^2, phi) = (" + std::to_string(n) + ", " + std::to_string(phi) + ")";
}

struct Fixture {
  const char* name;
  const char* expr;
};

// type constructions and the exceptional pairs of the gonality table
constexpr Fixture kFixtures[] = {
    {"mu1 h=1", "let A,B = isotropic(A.B=2); A + B"},
    {"mu1 h=2", "let A,B = isotropic(A.B=2); 2*A + 2*B"},
    {"mu1 h=3", "let A,B = isotropic(A.B=2); 3*A + 3*B"},
    {"mu2 h=1", "let A,B,C = isotropic(A.B=2, A.C=2, B.C=1); A + B + C"},
    {"mu2 h=2", "let A,B,C = isotropic(A.B=2, A.C=2, B.C=1); 2*A + 2*B + C"},
    {"mu3 h=1", "let A,B,C = isotropic(A.B=2, A.C=2, B.C=1); 2*A + B + C"},
    {"mu3 h=2", "let A,B,C = isotropic(A.B=2, A.C=2, B.C=1); 3*A + 2*B + C"},
    {"2D", "let A,B,C = isotropic(A.B=2, A.C=2, B.C=1); 2*(A + B + C)"},
    {"(6,2)", "let A,B,C = isotropic(A.B=1, A.C=1, B.C=1); A + B + C"},
    {"(12,3)", "let A,B = isotropic(A.B=3); 2*A + B"},
    {"(14,3)", "let A,B,C = isotropic(A.B=1, A.C=2, B.C=1); 2*A + B + C"},
    {"(20,4)",
     "let A,B,C,D,E = isotropic(A.B=1, A.C=1, A.D=1, A.E=1, B.C=1, B.D=1, B.E=1, C.D=1, C.E=1, D.E=1); "
     "A + B + C + D + E"},
    {"(22,4)", "let A,B,C,D = isotropic(A.B=2, A.C=1, A.D=1, B.C=1, B.D=1, C.D=1); 2*A + B + C + D"},
    {"(30,5)", "let A,B,C,D = isotropic(A.B=2, A.C=2, A.D=1, B.C=1, B.D=2, C.D=2); 2*A + B + C + D"},
};

struct Partial {
  std::map<Check, CheckCounters> counters;
  std::vector<Counterexample> counterexamples;
  std::vector<std::string> warnings;
  std::map<std::string, std::uint64_t> coverage;
};

class Evaluator {
 public:
  Evaluator(const EnriquesLattice& lat, const std::vector<Check>& checks) : lat_(lat), checks_(checks) {
    for (auto c : checks) wanted_[static_cast<int>(c)] = true;
  }

  void run(const LatticeClass& L, Partial& out) const {
    GonalityReport r;
    try {
      r = generic_gonality(lat_, L);
    } catch (const OverflowError&) {
      throw;
    } catch (const Error& e) {
      for (auto c : checks_) record(out, L, c, false, std::string("evaluation failed: ") + e.what());
      return;
    }
    const std::int64_t n = r.L_squared, phi = r.phi.value;
    const auto& type = r.classification.type;
    const bool mu_exact = r.mu.kind == MuKind::Exact;
    const std::int64_t mu = r.mu.value;

    out.coverage[std::string("case ") + to_string(r.classification.case_tag)]++;
    out.coverage[std::string("type ") + to_string(type.kind)]++;
    if (r.classification.case_tag == CaseTag::C) out.coverage["case c " + pair_str(n, phi)]++;

    if (n == 4 && phi == 2 && !(mu_exact && mu == 3))
      out.warnings.push_back(L.str() + ": " + pair_str(n, phi) + " but mu = " + std::to_string(mu) +
                             (mu_exact ? "" : " (lower bound)") + ", expected 3");

    if (want(Check::PhiBound))
      record(out, L, Check::PhiBound, phi * phi <= n, "phi^2 = " + std::to_string(phi * phi) + " > L^2 = " +
                                                         std::to_string(n));

    if (want(Check::PosconeGap)) {
      const bool gap = phi * phi < n && n < phi * phi + phi - 2;
      record(out, L, Check::PosconeGap, !gap, pair_str(n, phi) + " lies strictly between phi^2 and phi^2+phi-2");
    }

    if (want(Check::MuFloor)) {
      bool ok = mu >= 2 * phi - 2;
      std::string why = "mu = " + std::to_string(mu) + " < 2 phi - 2 = " + std::to_string(2 * phi - 2);
      if (ok && mu_exact && mu < 2 * phi) {
        const auto& w = r.mu.witness;
        if (!w || !w->splitting) {
          ok = false;
          why = "mu < 2 phi without a splitting witness";
        } else {
          const auto& [F1, F2] = *w->splitting;
          const std::int64_t p1 = lat_.pairing(F1, L), p2 = lat_.pairing(F2, L);
          ok = lat_.pairing(F1, F2) == 2 && p1 == phi && (p2 == phi || p2 == phi + 1) && F1 + F2 == w->cls &&
               lat_.norm(F1) == 0 && lat_.norm(F2) == 0;
          why = "splitting F1 = " + F1.str() + ", F2 = " + F2.str() + " violates F1.F2 = 2, F1.L = phi, F2.L in "
                "{phi, phi+1}";
        }
      }
      record(out, L, Check::MuFloor, ok, why);
    }

    const bool typed = type.kind == TypeKind::Mu1 || type.kind == TypeKind::Mu2 || type.kind == TypeKind::Mu3;

    if (want(Check::MuIff) && !(n == 4 && phi == 2)) {
      const bool small = mu_exact && mu < 2 * phi;
      record(out, L, Check::MuIff, small == typed,
             "mu = " + std::to_string(mu) + (mu_exact ? "" : " (lower bound)") + ", 2 phi = " +
                 std::to_string(2 * phi) + ", type " + to_string(type));
    }

    if (want(Check::ValueTable) && type.kind != TypeKind::General && !(n == 4 && phi == 2)) {
      const std::int64_t h = type.h;
      std::int64_t e_phi = 0, e_mu = 0, e_n = 0;
      switch (type.kind) {
        case TypeKind::Mu1: e_phi = 2 * h, e_mu = 2 * e_phi - 2, e_n = 4 * h * h; break;
        case TypeKind::Mu2: e_phi = 2 * h + 1, e_mu = 2 * e_phi - 1, e_n = 4 * h * h + 6 * h; break;
        case TypeKind::Mu3: e_phi = 2 * h + 2, e_mu = 2 * e_phi - 1, e_n = 4 * h * h + 10 * h + 4; break;
        case TypeKind::TwoD: e_phi = 6, e_mu = 12, e_n = 40; break;
        case TypeKind::General: break;
      }
      record(out, L, Check::ValueTable, mu_exact && mu == e_mu && phi == e_phi && n == e_n,
             "type " + to_string(type) + " expects (L^2, phi, mu) = (" + std::to_string(e_n) + ", " +
                 std::to_string(e_phi) + ", " + std::to_string(e_mu) + "), got (" + std::to_string(n) + ", " +
                 std::to_string(phi) + ", " + std::to_string(mu) + ")");
    }

    if (want(Check::GengonTable))
      record(out, L, Check::GengonTable, r.gengon == r.classification.table_gengon,
             "min formula gives " + std::to_string(r.gengon) + ", case table (" +
                 to_string(r.classification.case_tag) + ") gives " + std::to_string(r.classification.table_gengon));

    if (want(Check::Coherence)) coherence(L, n, phi, type, out);
  }

 private:
  bool want(Check c) const { return wanted_[static_cast<int>(c)]; }

  static void record(Partial& out, const LatticeClass& L, Check c, bool ok, const std::string& why) {
    auto& k = out.counters[c];
    ++k.tested;
    if (ok) {
      ++k.passed;
    } else {
      ++k.failed;
      out.counterexamples.push_back({L, c, why});
    }
  }

  void coherence(const LatticeClass& L, std::int64_t n, std::int64_t phi, const TypeTag& type, Partial& out) const {
    const bool extremal = n == phi * phi || n == phi * phi + phi - 2;
    if (!extremal) {
      record(out, L, Check::Coherence, type.kind == TypeKind::General,
             "non-extremal class typed " + to_string(type));
      return;
    }
    ExtremalCase x;
    try {
      x = extremal_decompose(lat_, L);
    } catch (const OverflowError&) {
      throw;
    } catch (const Error& e) {
      record(out, L, Check::Coherence, false, std::string("extremal_decompose failed: ") + e.what());
      return;
    }
    std::string why;
    if (!verify_extremal(lat_, L, x, &why)) {
      record(out, L, Check::Coherence, false, "extremal witnesses fail: " + why);
      return;
    }
    TypeKind expect = TypeKind::General;
    switch (x.tag) {
      case ExtremalTag::I: expect = TypeKind::Mu1; break;
      case ExtremalTag::IIa: expect = TypeKind::Mu2; break;
      case ExtremalTag::IIb: expect = TypeKind::Mu3; break;
      case ExtremalTag::IIc: expect = TypeKind::TwoD; break;
    }
    const bool h_ok = expect == TypeKind::TwoD || x.h == type.h;
    record(out, L, Check::Coherence, type.kind == expect && h_ok,
           std::string("extremal case ") + to_string(x.tag) + " (h=" + std::to_string(x.h) + ") but type " +
               to_string(type));
  }

  const EnriquesLattice& lat_;
  std::vector<Check> checks_;
  bool wanted_[7] = {};
};

void merge(Partial& into, Partial&& from) {
  for (const auto& [c, k] : from.counters) {
    auto& t = into.counters[c];
    t.tested += k.tested;
    t.passed += k.passed;
    t.failed += k.failed;
  }
  for (auto& x : from.counterexamples) into.counterexamples.push_back(std::move(x));
  for (auto& w : from.warnings) into.warnings.push_back(std::move(w));
  for (const auto& [k, v] : from.coverage) into.coverage[k] += v;
}

// Effective classes of positive square in the box, in lexicographic order.
std::vector<LatticeClass> region_classes(const EnriquesLattice& lat, std::int64_t R,
                                         std::optional<std::int64_t> max_norm) {
  std::vector<LatticeClass> out;
  LatticeClass x;
  for (std::size_t i = 0; i < kRank; ++i) x[i] = -R;
  while (true) {
    const std::int64_t n = lat.norm(x);
    if (n > 0 && (!max_norm || n <= *max_norm) && lat.is_num_effective(x)) out.push_back(x);
    std::size_t i = kRank;
    while (i > 0) {
      --i;
      if (x[i] < R) {
        ++x[i];
        break;
      }
      x[i] = -R;
      if (i == 0) return out;
    }
  }
}

constexpr std::size_t kExamples = 5;

void add_examples(std::vector<LatticeClass>& into, const LatticeClass& x) {
  if (into.size() < kExamples) into.push_back(x);
}

// Exact set comparison of one query with every solution materialised on both
// sides. Used when keys do not pack or the oracle stream is out of order.
std::optional<QueryMismatch> compare_materialised(const EnriquesLattice& lat, const CosetEnumerator& e,
                                                  const oracle::Box& box, QueryMismatch m,
                                                  std::uint64_t& solutions) {
  std::vector<LatticeClass> va, vb;
  e.for_each(m.s, m.c, [&](const LatticeClass& x) { va.push_back(x); });
  oracle::box_for_each(lat, m.anchor, m.s, m.c, box, [&](const LatticeClass& x) { vb.push_back(x); });
  m.enumerated = va.size();
  m.oracle = vb.size();
  solutions += va.size();
  std::sort(va.begin(), va.end());
  std::sort(vb.begin(), vb.end());
  if (std::adjacent_find(va.begin(), va.end()) != va.end()) m.details = "enumerator repeated a solution";
  std::vector<LatticeClass> da, db;
  std::set_difference(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(da));
  std::set_difference(vb.begin(), vb.end(), va.begin(), va.end(), std::back_inserter(db));
  if (da.empty() && db.empty() && m.details.empty()) return std::nullopt;
  for (const auto& x : da) add_examples(m.only_enumerated, x);
  for (const auto& x : db) add_examples(m.only_oracle, x);
  if (m.details.empty()) m.details = "solution sets differ";
  return m;
}

// Compact keys for boxes of radius <= 127: (x0, x1) as a 16-bit group and
// the other eight coordinates one byte each.
constexpr std::int64_t kCompactRadius = 127;
constexpr std::uint32_t kSide = 2 * kCompactRadius + 1;
constexpr std::uint32_t kGroups = kSide * kSide;

std::uint16_t group_of(const LatticeClass& x) {
  return static_cast<std::uint16_t>(static_cast<std::uint32_t>(x[0] + kCompactRadius) * kSide +
                                    static_cast<std::uint32_t>(x[1] + kCompactRadius));
}

std::uint64_t tail_of(const LatticeClass& x) {
  std::uint64_t t = 0;
  for (std::size_t i = 2; i < kRank; ++i) t = (t << 8) | static_cast<std::uint64_t>(x[i] + kCompactRadius);
  return t;
}

LatticeClass from_key(std::uint32_t g, std::uint64_t t) {
  LatticeClass x;
  x[0] = static_cast<std::int64_t>(g / kSide) - kCompactRadius;
  x[1] = static_cast<std::int64_t>(g % kSide) - kCompactRadius;
  for (std::size_t i = kRank; i > 2; --i) {
    x[i - 1] = static_cast<std::int64_t>(t & 0xff) - kCompactRadius;
    t >>= 8;
  }
  return x;
}

// Exact set comparison of one query. The enumerator side is bucketed by
// (x0, x1) and sorted per bucket; the oracle stream arrives grouped by
// ascending (x0, x1), so each group is sorted on its own and merged against
// its bucket.
std::optional<QueryMismatch> compare_query(const EnriquesLattice& lat, const CosetEnumerator& e,
                                           const LatticeClass& L, std::int64_t s, std::int64_t c,
                                           std::uint64_t& solutions) {
  const std::int64_t n = lat.norm(L);
  QueryMismatch m{L, s, c, 0, 0, {}, {}, {}};
  if (static_cast<i128>(s) * n > static_cast<i128>(c) * c) {
    // infeasible: the enumerator must refuse and the oracle must be empty
    m.oracle = oracle::certified_solutions(lat, L, s, c).size();
    try {
      m.enumerated = e.count(s, c);
      m.details = "enumerator accepted an infeasible query";
    } catch (const InfeasibleQuery&) {
      if (m.oracle == 0) return std::nullopt;
      m.details = "oracle reported solutions for an infeasible query";
    }
    return m;
  }
  const oracle::Box box = oracle::certified_coordinate_bound(lat, L, s, c);
  if (box.radius > kCompactRadius) return compare_materialised(lat, e, box, m, solutions);

  std::vector<std::uint16_t> groups;
  std::vector<std::uint64_t> tails;
  e.for_each(s, c, [&](const LatticeClass& x) {
    if (x.max_abs() > kCompactRadius) {
      add_examples(m.only_enumerated, x);  // outside the certified box
      return;
    }
    groups.push_back(group_of(x));
    tails.push_back(tail_of(x));
  });
  std::vector<std::uint32_t> start(kGroups + 1, 0);
  for (auto g : groups) ++start[g + 1];
  for (std::uint32_t g = 0; g < kGroups; ++g) start[g + 1] += start[g];
  std::vector<std::uint64_t> a(tails.size());
  {
    std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
    for (std::size_t i = 0; i < tails.size(); ++i) a[fill[groups[i]]++] = tails[i];
  }
  m.enumerated = a.size() + m.only_enumerated.size();
  std::vector<std::uint16_t>().swap(groups);
  std::vector<std::uint64_t>().swap(tails);
  for (std::uint32_t g = 0; g < kGroups; ++g) {
    if (start[g + 1] - start[g] < 2) continue;
    boost::sort::spreadsort::integer_sort(a.begin() + start[g], a.begin() + start[g + 1]);
    if (std::adjacent_find(a.begin() + start[g], a.begin() + start[g + 1]) != a.begin() + start[g + 1])
      m.details = "enumerator repeated a solution";
  }

  std::uint32_t next = 0;  // buckets below this have been merged
  std::vector<std::uint64_t> group;
  std::uint32_t current = 0;
  bool have_group = false, ordered = true;
  std::uint64_t oracle_count = 0;
  auto unmatched_until = [&](std::uint32_t g) {
    for (; next < g; ++next)
      for (std::uint32_t i = start[next]; i < start[next + 1]; ++i) add_examples(m.only_enumerated, from_key(next, a[i]));
  };
  auto flush = [&]() {
    unmatched_until(current);
    boost::sort::spreadsort::integer_sort(group.begin(), group.end());
    std::uint32_t i = start[current];
    const std::uint32_t end = start[current + 1];
    std::size_t j = 0;
    while (i < end || j < group.size()) {
      if (i == end || (j < group.size() && group[j] < a[i])) {
        add_examples(m.only_oracle, from_key(current, group[j++]));
      } else if (j == group.size() || a[i] < group[j]) {
        add_examples(m.only_enumerated, from_key(current, a[i++]));
      } else {
        ++i, ++j;
      }
    }
    next = current + 1;
    group.clear();
  };
  oracle::box_for_each(lat, L, s, c, box, [&](const LatticeClass& x) {
    ++oracle_count;
    if (!ordered) return;
    const std::uint32_t g = group_of(x);
    if (!have_group || g != current) {
      if (have_group) {
        if (g < current) {
          ordered = false;
          return;
        }
        flush();
      }
      have_group = true;
      current = g;
    }
    group.push_back(tail_of(x));
  });
  if (!ordered) return compare_materialised(lat, e, box, QueryMismatch{L, s, c, 0, 0, {}, {}, {}}, solutions);
  if (have_group) flush();
  unmatched_until(kGroups);
  m.oracle = oracle_count;
  solutions += m.enumerated;
  if (m.only_enumerated.empty() && m.only_oracle.empty() && m.enumerated == m.oracle && m.details.empty())
    return std::nullopt;
  if (m.details.empty()) m.details = "solution sets differ";
  return m;
}

}  // namespace

const char* to_string(Check c) {
  switch (c) {
    case Check::PosconeGap: return "poscone_gap";
    case Check::MuIff: return "mu_iff";
    case Check::ValueTable: return "value_table";
    case Check::GengonTable: return "gengon_table";
    case Check::PhiBound: return "phi_bound";
    case Check::MuFloor: return "mu_floor";
    case Check::Coherence: return "coherence";
  }
  return "?";
}

const std::vector<Check>& all_checks() {
  static const std::vector<Check> all{Check::PosconeGap, Check::MuIff,    Check::ValueTable, Check::GengonTable,
                                      Check::PhiBound,   Check::MuFloor, Check::Coherence};
  return all;
}

Check check_from_string(const std::string& s) {
  for (auto c : all_checks())
    if (s == to_string(c)) return c;
  throw InvalidInput("unknown check '" + s + "'");
}

std::vector<Check> parse_checks(const std::string& list) {
  if (list == "all") return all_checks();
  std::set<Check> seen;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    seen.insert(check_from_string(item));
  }
  if (seen.empty()) throw InvalidInput("no checks selected");
  return {seen.begin(), seen.end()};
}

std::uint64_t SweepReport::failures() const {
  std::uint64_t f = 0;
  for (const auto& [c, k] : counters) f += k.failed;
  return f;
}

SweepReport run_sweep(const EnriquesLattice& lattice, const SweepSpec& spec) {
  if (spec.region.radius < 1) throw InvalidInput("sweep radius must be at least 1");
  if (spec.checks.empty()) throw InvalidInput("no checks selected");
  const auto t0 = Clock::now();
  SweepReport rep;
  rep.radius = spec.region.radius;
  rep.checks = spec.checks;
  rep.threads = resolve_threads(spec.threads);

  std::vector<LatticeClass> classes = region_classes(lattice, spec.region.radius, spec.max_norm);
  rep.region_classes = classes.size();
  if (spec.inject_fixtures) {
    for (const auto& f : kFixtures) {
      try {
        const LatticeClass L = parse_class(f.expr, {}, lattice).resolved;
        if (lattice.norm(L) <= 0 || !lattice.is_num_effective(L)) {
          rep.warnings.push_back(std::string("fixture ") + f.name + " is not effective of positive square");
          continue;
        }
        classes.push_back(L);
        ++rep.injected_classes;
      } catch (const Error& e) {
        rep.warnings.push_back(std::string("fixture ") + f.name + " not realised: " + e.what());
      }
    }
  }

  const Evaluator eval(lattice, spec.checks);
  std::vector<Partial> parts(rep.threads);
  parallel_for(classes.size(), rep.threads, [&](unsigned w, std::size_t i) { eval.run(classes[i], parts[w]); });

  Partial all;
  for (auto c : spec.checks) all.counters[c];
  for (auto& p : parts) merge(all, std::move(p));
  std::sort(all.counterexamples.begin(), all.counterexamples.end(), [](const auto& a, const auto& b) {
    return std::tie(a.check, a.L, a.details) < std::tie(b.check, b.L, b.details);
  });
  std::sort(all.warnings.begin(), all.warnings.end());
  all.warnings.erase(std::unique(all.warnings.begin(), all.warnings.end()), all.warnings.end());
  rep.counters = std::move(all.counters);
  rep.counterexamples = std::move(all.counterexamples);
  for (auto& w : all.warnings) rep.warnings.push_back(std::move(w));
  rep.coverage = std::move(all.coverage);
  rep.elapsed_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

std::vector<LatticeClass> sample_anchors(const EnriquesLattice& lattice, std::int64_t radius, std::size_t count,
                                         std::uint64_t seed) {
  if (radius < 1) throw InvalidInput("anchor radius must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(-radius, radius);
  std::set<LatticeClass> seen;
  std::vector<LatticeClass> out;
  constexpr std::size_t kMaxDraws = 100000000;
  for (std::size_t draws = 0; out.size() < count; ++draws) {
    if (draws == kMaxDraws) throw InvalidInput("could not sample enough effective anchors");
    LatticeClass x;
    for (std::size_t i = 0; i < kRank; ++i) x[i] = coord(rng);
    if (lattice.norm(x) <= 0 || !lattice.is_num_effective(x)) continue;
    if (seen.insert(x).second) out.push_back(x);
  }
  return out;
}

OracleReport oracle_check(const EnriquesLattice& lattice, const OracleSpec& spec) {
  if (spec.anchors == 0) throw InvalidInput("at least one anchor is required");
  if (spec.max_pairing < 1) throw InvalidInput("max pairing must be positive");
  const auto t0 = Clock::now();
  OracleReport rep;
  rep.radius = spec.radius;
  rep.seed = spec.seed;
  rep.threads = resolve_threads(spec.threads);
  rep.anchors = sample_anchors(lattice, spec.radius, spec.anchors, spec.seed);

  struct PerAnchor {
    std::uint64_t queries = 0, solutions = 0, phi = 0, mu = 0;
    std::vector<QueryMismatch> mismatches;
    std::vector<std::string> phi_bad, mu_bad;
  };
  std::vector<PerAnchor> results(rep.anchors.size());
  parallel_for(rep.anchors.size(), rep.threads, [&](unsigned, std::size_t i) {
    const LatticeClass& L = rep.anchors[i];
    PerAnchor& r = results[i];
    const CosetEnumerator e(lattice, L);
    for (std::int64_t s : spec.norms)
      for (std::int64_t c = 1; c <= spec.max_pairing; ++c) {
        ++r.queries;
        if (auto m = compare_query(lattice, e, L, s, c, r.solutions)) r.mismatches.push_back(std::move(*m));
      }
    std::int64_t phi = 0;
    if (spec.check_phi || spec.check_mu) {
      const auto fast = min_pairing_isotropic(lattice, L);
      phi = fast.value;
      if (spec.check_phi) {
        ++r.phi;
        const auto slow = oracle::naive_phi(lattice, L);
        if (!(slow == fast))
          r.phi_bad.push_back(L.str() + ": phi " + std::to_string(fast.value) + " via " + fast.cls.str() +
                              ", oracle " + std::to_string(slow.value) + " via " + slow.cls.str());
      }
    }
    if (spec.check_mu) {
      const auto mu = mu_capped(lattice, L, phi, std::nullopt);
      const auto slow = oracle::naive_mu(lattice, L, mu.cap_used);
      ++r.mu;
      const bool fast_exact = mu.kind == MuKind::Exact;
      bool agree = fast_exact == slow.has_value();
      if (agree && fast_exact) agree = slow->value == mu.value && mu.witness && slow->witness == mu.witness->cls;
      if (!agree)
        r.mu_bad.push_back(L.str() + ": mu " + std::to_string(mu.value) + (fast_exact ? "" : " (lower bound)") +
                           ", oracle " + (slow ? std::to_string(slow->value) : std::string("none")) + " with cap " +
                           std::to_string(mu.cap_used));
    }
  });

  for (auto& r : results) {
    rep.queries += r.queries;
    rep.solutions += r.solutions;
    rep.phi_checked += r.phi;
    rep.mu_checked += r.mu;
    for (auto& m : r.mismatches) rep.mismatches.push_back(std::move(m));
    for (auto& s : r.phi_bad) rep.phi_mismatches.push_back(std::move(s));
    for (auto& s : r.mu_bad) rep.mu_mismatches.push_back(std::move(s));
  }
  rep.elapsed_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

}  // namespace enriques
