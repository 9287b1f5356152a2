#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "enriques/lattice.hpp"

namespace enriques {

/// Intersection shapes of an isotropic decomposition, in the order they are
/// preferred: all pairs 1; E1.E2 = 2; E1.E2 = E1.E3 = 2; remaining pairs 1.
enum class Pattern { AllOnes, OneDouble, TwoDoubles };

struct Decomposition {
  std::vector<std::int64_t> coefficients;
  std::vector<LatticeClass> classes;
  Pattern pattern = Pattern::AllOnes;
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

struct IsotropicFrame {
  std::array<LatticeClass, 10> classes;
  friend bool operator==(const IsotropicFrame&, const IsotropicFrame&) = default;
};

/// Coefficient vector plus the target Gram matrix (zero diagonal).
struct GramPattern {
  std::vector<std::int64_t> coefficients;
  std::vector<std::vector<std::int64_t>> gram;

  std::size_t size() const { return coefficients.size(); }
  /// Builds the Gram matrix of one of the three shapes.
  static GramPattern shape(Pattern p, std::vector<std::int64_t> coefficients);
};

struct PatternMatch {
  std::vector<std::int64_t> coefficients;
  std::vector<LatticeClass> classes;
  friend bool operator==(const PatternMatch&, const PatternMatch&) = default;
};

enum class ExtremalTag { I, IIa, IIb, IIc };

struct ExtremalCase {
  ExtremalTag tag = ExtremalTag::I;
  std::int64_t h = 0;
  LatticeClass E1, E2;
  std::optional<LatticeClass> E3;
  friend bool operator==(const ExtremalCase&, const ExtremalCase&) = default;
};

const char* to_string(Pattern p);
const char* to_string(ExtremalTag t);
Pattern pattern_from_string(const std::string& s);
ExtremalTag extremal_tag_from_string(const std::string& s);

/// Effective primitive isotropic E_i with E_i.E_j = gram[i][j] and
/// sum coefficients[i] E_i = L. Each slot's pairing with L is forced by the
/// pattern; slots whose pairing exceeds the budget make the search give up
/// (nullopt). Lexicographically smallest match first. budget defaults to L^2.
std::optional<PatternMatch> search_pattern(const EnriquesLattice& lattice, const LatticeClass& L,
                                           const GramPattern& p,
                                           std::optional<std::int64_t> budget = std::nullopt);

/// L = sum a_i E_i with one of the three shapes, n <= 10.
Decomposition isotropic_decompose(const EnriquesLattice& lattice, const LatticeClass& L);

/// Exhaustive search over shapes and coefficient vectors (shape order as
/// declared, then n ascending). Used as the fallback of isotropic_decompose.
std::optional<Decomposition> shape_search_decompose(const EnriquesLattice& lattice, const LatticeClass& L);

/// The ten isotropic classes F with F.D = 3 for D^2 = 10, phi(D) = 3.
IsotropicFrame ten_frame(const EnriquesLattice& lattice, const LatticeClass& D);

/// Witnesses for L^2 = phi^2 (case i) or L^2 = phi^2 + phi - 2 (ii-a, ii-b, ii-c).
ExtremalCase extremal_decompose(const EnriquesLattice& lattice, const LatticeClass& L);

/// Exact checks; on failure `why` receives the first violated condition.
bool verify_decomposition(const EnriquesLattice& lattice, const LatticeClass& L,
                          const Decomposition& d, std::string* why = nullptr);
bool verify_frame(const EnriquesLattice& lattice, const LatticeClass& D, const IsotropicFrame& f,
                  std::string* why = nullptr);
bool verify_extremal(const EnriquesLattice& lattice, const LatticeClass& L, const ExtremalCase& x,
                     std::string* why = nullptr);
bool verify_match(const EnriquesLattice& lattice, const LatticeClass& L, const GramPattern& p,
                  const PatternMatch& m, std::string* why = nullptr);

inline Decomposition isotropic_decompose(const LatticeClass& L) {
  return isotropic_decompose(EnriquesLattice::standard(), L);
}
inline IsotropicFrame ten_frame(const LatticeClass& D) { return ten_frame(EnriquesLattice::standard(), D); }
inline ExtremalCase extremal_decompose(const LatticeClass& L) {
  return extremal_decompose(EnriquesLattice::standard(), L);
}

}  // namespace enriques
