#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "enriques/isotropic_enum.hpp"
#include "enriques/lattice.hpp"

namespace enriques {

/// B with B^2 = 4, phi(B) = 2 realising mu; value = B.L - 2.
struct MuWitness {
  LatticeClass cls;
  std::int64_t value = 0;
  /// B = F1 + F2 with F1.F2 = 2, F1.L = phi(L); present whenever value < 2 phi(L).
  std::optional<std::pair<LatticeClass, LatticeClass>> splitting;
  friend bool operator==(const MuWitness&, const MuWitness&) = default;
};

enum class MuKind { Exact, LowerBoundOnly };

/// When kind is LowerBoundOnly no B with B.L <= cap_used qualifies and
/// value = cap_used - 1, i.e. mu(L) > cap_used - 2.
struct MuResult {
  MuKind kind = MuKind::Exact;
  std::int64_t value = 0;
  std::optional<MuWitness> witness;
  std::int64_t cap_used = 0;
  friend bool operator==(const MuResult&, const MuResult&) = default;
};

enum class CaseTag { A, B, C, Generic };
enum class TypeKind { Mu1, Mu2, Mu3, TwoD, General };

struct TypeTag {
  TypeKind kind = TypeKind::General;
  std::int64_t h = 0;  // 0 for TwoD and General
  friend bool operator==(const TypeTag&, const TypeTag&) = default;
};

struct MingonBounds {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  /// gengon - 2 ruled out because phi < ceil(sqrt(L^2 / 2)).
  bool lower_excluded = false;
  friend bool operator==(const MingonBounds&, const MingonBounds&) = default;
};

struct Classification {
  CaseTag case_tag = CaseTag::Generic;
  TypeTag type;
  /// Gonality read off the case table.
  std::int64_t table_gengon = 0;
  friend bool operator==(const Classification&, const Classification&) = default;
};

struct GonalityReport {
  LatticeClass L;
  std::int64_t L_squared = 0;
  IsotropicWitness phi;
  MuResult mu;
  std::int64_t quarter_bound = 0;
  std::int64_t gengon = 0;
  Classification classification;
  MingonBounds mingon;
  friend bool operator==(const GonalityReport&, const GonalityReport&) = default;
};

const char* to_string(CaseTag t);
const char* to_string(TypeKind k);
std::string to_string(const TypeTag& t);
const char* to_string(MuKind k);
CaseTag case_tag_from_string(const std::string& s);
TypeKind type_kind_from_string(const std::string& s);
MuKind mu_kind_from_string(const std::string& s);

/// floor(L^2 / 4) + 2
std::int64_t quarter_bound(std::int64_t L_squared);

/// Case table value from (L^2, phi) and the type. At (4, 2) the table gives
/// 3: case (a) would read 2, but mu = 3 there and the min-formula is 3.
std::int64_t table_gengon(std::int64_t L_squared, std::int64_t phi, CaseTag tag);

/// phi(B) == 2 for B^2 = 4, i.e. no isotropic F with F.B = 1.
bool has_phi_two(const EnriquesLattice& lattice, const LatticeClass& B);

/// L = 2D with D^2 = 10 and phi(D) = 3.
bool is_two_d(const EnriquesLattice& lattice, const LatticeClass& L);

/// Throws CapTooSmall when cap < 2 phi(L). cap defaults to 2 phi(L) + 2.
MuResult mu_capped(const EnriquesLattice& lattice, const LatticeClass& L,
                   std::optional<std::int64_t> cap = std::nullopt);
/// Same with phi already known.
MuResult mu_capped(const EnriquesLattice& lattice, const LatticeClass& L, std::int64_t phi,
                   std::optional<std::int64_t> cap);

Classification case_classify(const EnriquesLattice& lattice, const LatticeClass& L);
Classification classify_with_phi(const EnriquesLattice& lattice, const LatticeClass& L,
                                 std::int64_t phi);

MingonBounds mingon_bounds(const EnriquesLattice& lattice, const LatticeClass& L);
MingonBounds mingon_from(std::int64_t L_squared, std::int64_t phi, std::int64_t gengon);

GonalityReport generic_gonality(const EnriquesLattice& lattice, const LatticeClass& L);

inline MuResult mu_capped(const LatticeClass& L, std::optional<std::int64_t> cap = std::nullopt) {
  return mu_capped(EnriquesLattice::standard(), L, cap);
}
inline Classification case_classify(const LatticeClass& L) {
  return case_classify(EnriquesLattice::standard(), L);
}
inline MingonBounds mingon_bounds(const LatticeClass& L) {
  return mingon_bounds(EnriquesLattice::standard(), L);
}
inline GonalityReport generic_gonality(const LatticeClass& L) {
  return generic_gonality(EnriquesLattice::standard(), L);
}

}  // namespace enriques
