#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "enriques/lattice.hpp"
#include "enriques/oracle.hpp"

namespace enriques {

enum class Check { PosconeGap, MuIff, ValueTable, GengonTable, PhiBound, MuFloor, Coherence };

const char* to_string(Check c);
Check check_from_string(const std::string& s);
const std::vector<Check>& all_checks();
/// "all" or a comma separated list of check names.
std::vector<Check> parse_checks(const std::string& list);

/// Candidates are the effective classes of positive square in the box,
/// optionally capped in square, plus the fixed type constructions when
/// inject_fixtures is set.
struct SweepSpec {
  oracle::Box region{2};
  std::optional<std::int64_t> max_norm;
  std::vector<Check> checks = all_checks();
  bool inject_fixtures = true;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct CheckCounters {
  std::uint64_t tested = 0;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  friend bool operator==(const CheckCounters&, const CheckCounters&) = default;
};

struct Counterexample {
  LatticeClass L;
  Check check = Check::PosconeGap;
  std::string details;
  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct SweepReport {
  std::int64_t radius = 0;
  std::vector<Check> checks;
  std::map<Check, CheckCounters> counters;
  /// Sorted by (check, L).
  std::vector<Counterexample> counterexamples;
  /// Soft checks that do not count as failures.
  std::vector<std::string> warnings;
  std::uint64_t region_classes = 0;
  std::uint64_t injected_classes = 0;
  /// Classes seen per case tag, type and (L^2, phi) of interest.
  std::map<std::string, std::uint64_t> coverage;
  double elapsed_seconds = 0;
  unsigned threads = 1;

  std::uint64_t tested() const { return region_classes + injected_classes; }
  std::uint64_t failures() const;
  bool passed() const { return failures() == 0; }
  friend bool operator==(const SweepReport&, const SweepReport&) = default;
};

SweepReport run_sweep(const EnriquesLattice& lattice, const SweepSpec& spec);
inline SweepReport run_sweep(const SweepSpec& spec) { return run_sweep(EnriquesLattice::standard(), spec); }

struct OracleSpec {
  std::int64_t radius = 2;
  std::size_t anchors = 50;
  std::uint64_t seed = 1;
  std::vector<std::int64_t> norms{0, 4};
  std::int64_t max_pairing = 8;
  bool check_phi = true;
  bool check_mu = true;
  unsigned threads = 0;
};

struct QueryMismatch {
  LatticeClass anchor;
  std::int64_t s = 0;
  std::int64_t c = 0;
  std::uint64_t enumerated = 0;
  std::uint64_t oracle = 0;
  /// At most a few examples from each side of the symmetric difference.
  std::vector<LatticeClass> only_enumerated;
  std::vector<LatticeClass> only_oracle;
  std::string details;
  friend bool operator==(const QueryMismatch&, const QueryMismatch&) = default;
};

struct OracleReport {
  std::int64_t radius = 0;
  std::uint64_t seed = 0;
  std::vector<LatticeClass> anchors;
  std::uint64_t queries = 0;
  std::uint64_t solutions = 0;
  std::vector<QueryMismatch> mismatches;
  std::uint64_t phi_checked = 0;
  std::vector<std::string> phi_mismatches;
  std::uint64_t mu_checked = 0;
  std::vector<std::string> mu_mismatches;
  double elapsed_seconds = 0;
  unsigned threads = 1;

  bool passed() const { return mismatches.empty() && phi_mismatches.empty() && mu_mismatches.empty(); }
  friend bool operator==(const OracleReport&, const OracleReport&) = default;
};

/// Deterministic sample of distinct effective anchors of positive square with
/// coordinates in [-radius, radius].
std::vector<LatticeClass> sample_anchors(const EnriquesLattice& lattice, std::int64_t radius, std::size_t count,
                                         std::uint64_t seed);

/// Differential test of the coset enumerator against the box oracle over the
/// certified bound, plus naive phi and mu against the invariants.
OracleReport oracle_check(const EnriquesLattice& lattice, const OracleSpec& spec);
inline OracleReport oracle_check(const OracleSpec& spec) { return oracle_check(EnriquesLattice::standard(), spec); }

}  // namespace enriques
