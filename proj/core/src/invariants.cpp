#include "enriques/invariants.hpp"

#include <algorithm>
#include <array>

namespace enriques {

namespace {

void require_positive_effective(const EnriquesLattice& lattice, const LatticeClass& L) {
  if (lattice.norm(L) <= 0 || !lattice.is_num_effective(L))
    throw InvalidInput("expected an effective class of positive square, got " + L.str());
}

// smallest c with c^2 >= 4 n
std::int64_t hodge_floor(std::int64_t n) {
  auto c = static_cast<std::int64_t>(isqrt128(4 * static_cast<i128>(n)));
  if (static_cast<i128>(c) * c < 4 * static_cast<i128>(n)) ++c;
  return c;
}

constexpr std::array<std::pair<std::int64_t, std::int64_t>, 6> kCaseC = {
    {{30, 5}, {22, 4}, {20, 4}, {14, 3}, {12, 3}, {6, 2}}};

}  // namespace

const char* to_string(CaseTag t) {
  switch (t) {
    case CaseTag::A: return "a";
    case CaseTag::B: return "b";
    case CaseTag::C: return "c";
    case CaseTag::Generic: return "generic";
  }
  return "?";
}

const char* to_string(TypeKind k) {
  switch (k) {
    case TypeKind::Mu1: return "mu1";
    case TypeKind::Mu2: return "mu2";
    case TypeKind::Mu3: return "mu3";
    case TypeKind::TwoD: return "2D";
    case TypeKind::General: return "general";
  }
  return "?";
}

std::string to_string(const TypeTag& t) {
  switch (t.kind) {
    case TypeKind::Mu1:
    case TypeKind::Mu2:
    case TypeKind::Mu3: return std::string(to_string(t.kind)) + "(h=" + std::to_string(t.h) + ")";
    default: return to_string(t.kind);
  }
}

const char* to_string(MuKind k) { return k == MuKind::Exact ? "exact" : "lower_bound_only"; }

CaseTag case_tag_from_string(const std::string& s) {
  for (auto t : {CaseTag::A, CaseTag::B, CaseTag::C, CaseTag::Generic})
    if (s == to_string(t)) return t;
  throw InvalidInput("unknown case tag '" + s + "'");
}

TypeKind type_kind_from_string(const std::string& s) {
  for (auto t : {TypeKind::Mu1, TypeKind::Mu2, TypeKind::Mu3, TypeKind::TwoD, TypeKind::General})
    if (s == to_string(t)) return t;
  throw InvalidInput("unknown type '" + s + "'");
}

MuKind mu_kind_from_string(const std::string& s) {
  if (s == "exact") return MuKind::Exact;
  if (s == "lower_bound_only") return MuKind::LowerBoundOnly;
  throw InvalidInput("unknown mu kind '" + s + "'");
}

std::int64_t quarter_bound(std::int64_t L_squared) { return L_squared / 4 + 2; }

std::int64_t table_gengon(std::int64_t L_squared, std::int64_t phi, CaseTag tag) {
  switch (tag) {
    case CaseTag::A:
      if (L_squared == 4 && phi == 2) return 3;
      return 2 * phi - 2;
    case CaseTag::B: return (phi == 3 || phi == 4) ? 2 * phi - 2 : 2 * phi - 1;
    case CaseTag::C: return 2 * phi - 1;
    case CaseTag::Generic: return 2 * phi;
  }
  return 2 * phi;
}

bool has_phi_two(const EnriquesLattice& lattice, const LatticeClass& B) {
  CosetEnumerator e(lattice, B);
  return e.enumerate(0, 1, true, true).solutions.empty();
}

bool is_two_d(const EnriquesLattice& lattice, const LatticeClass& L) {
  if (!L.divisible_by(2)) return false;
  const LatticeClass D = L.divided_by(2);
  if (lattice.norm(D) != 10 || !lattice.is_num_effective(D)) return false;
  return min_pairing_isotropic(lattice, D).value == 3;
}

MuResult mu_capped(const EnriquesLattice& lattice, const LatticeClass& L,
                   std::optional<std::int64_t> cap) {
  require_positive_effective(lattice, L);
  const auto phi = min_pairing_isotropic(lattice, L).value;
  return mu_capped(lattice, L, phi, cap);
}

MuResult mu_capped(const EnriquesLattice& lattice, const LatticeClass& L, std::int64_t phi,
                   std::optional<std::int64_t> cap) {
  require_positive_effective(lattice, L);
  const std::int64_t n = lattice.norm(L);
  const std::int64_t cap_used = cap.value_or(2 * phi + 2);
  if (cap_used < 2 * phi)
    throw CapTooSmall("cap " + std::to_string(cap_used) + " is below 2*phi = " + std::to_string(2 * phi));
  CosetEnumerator e(lattice, L);
  for (std::int64_t c = std::max<std::int64_t>(1, hodge_floor(n)); c <= cap_used; ++c) {
    for (const auto& B : e.enumerate(4, c, false, true).solutions) {
      if (B == L || !has_phi_two(lattice, B)) continue;
      MuWitness w{B, c - 2, std::nullopt};
      if (w.value < 2 * phi) {
        CosetEnumerator eb(lattice, B);
        for (const auto& F1 : eb.enumerate(0, 2, true, true).solutions) {
          if (lattice.pairing(F1, L) != phi) continue;
          const LatticeClass F2 = B - F1;
          if (F2.is_zero() || lattice.norm(F2) != 0 || !lattice.is_num_effective(F2)) continue;
          const auto f2l = lattice.pairing(F2, L);
          if (f2l != phi && f2l != phi + 1) continue;
          w.splitting = std::make_pair(F1, F2);
          break;
        }
      }
      return MuResult{MuKind::Exact, w.value, w, cap_used};
    }
  }
  return MuResult{MuKind::LowerBoundOnly, cap_used - 1, std::nullopt, cap_used};
}

Classification classify_with_phi(const EnriquesLattice& lattice, const LatticeClass& L,
                                 std::int64_t phi) {
  const std::int64_t n = lattice.norm(L);
  const bool two_d = is_two_d(lattice, L);
  Classification out;
  const std::int64_t extremal = phi * phi + phi - 2;
  if (n == phi * phi) {
    out.type = {TypeKind::Mu1, phi / 2};
  } else if (n == extremal && !two_d) {
    out.type = (phi % 2 == 1) ? TypeTag{TypeKind::Mu2, (phi - 1) / 2}
                              : TypeTag{TypeKind::Mu3, (phi - 2) / 2};
  } else if (two_d) {
    out.type = {TypeKind::TwoD, 0};
  }
  if (n == phi * phi && phi >= 2 && phi % 2 == 0) {
    out.case_tag = CaseTag::A;
  } else if (n == extremal && phi >= 3 && !two_d) {
    out.case_tag = CaseTag::B;
  } else if (std::find(kCaseC.begin(), kCaseC.end(), std::make_pair(n, phi)) != kCaseC.end()) {
    out.case_tag = CaseTag::C;
  }
  out.table_gengon = table_gengon(n, phi, out.case_tag);
  return out;
}

Classification case_classify(const EnriquesLattice& lattice, const LatticeClass& L) {
  require_positive_effective(lattice, L);
  return classify_with_phi(lattice, L, min_pairing_isotropic(lattice, L).value);
}

MingonBounds mingon_from(std::int64_t L_squared, std::int64_t phi, std::int64_t gengon) {
  // ceil(sqrt(L^2 / 2)): smallest k with 2 k^2 >= L^2
  auto k = static_cast<std::int64_t>(isqrt128(L_squared / 2));
  while (2 * k * k < L_squared) ++k;
  MingonBounds b{gengon - 2, gengon, false};
  if (phi < k) {
    b.lo = gengon - 1;
    b.lower_excluded = true;
  }
  return b;
}

MingonBounds mingon_bounds(const EnriquesLattice& lattice, const LatticeClass& L) {
  return generic_gonality(lattice, L).mingon;
}

GonalityReport generic_gonality(const EnriquesLattice& lattice, const LatticeClass& L) {
  require_positive_effective(lattice, L);
  GonalityReport r;
  r.L = L;
  r.L_squared = lattice.norm(L);
  r.phi = min_pairing_isotropic(lattice, L);
  r.mu = mu_capped(lattice, L, r.phi.value, std::nullopt);
  r.quarter_bound = quarter_bound(r.L_squared);
  r.gengon = std::min(2 * r.phi.value, r.quarter_bound);
  if (r.mu.kind == MuKind::Exact) r.gengon = std::min(r.gengon, r.mu.value);
  r.classification = classify_with_phi(lattice, L, r.phi.value);
  r.mingon = mingon_from(r.L_squared, r.phi.value, r.gengon);
  return r;
}

}  // namespace enriques
