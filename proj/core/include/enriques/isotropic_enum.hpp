#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "enriques/lattice.hpp"

namespace enriques {

struct EnumQuery {
  LatticeClass anchor;
  std::int64_t target_norm = 0;
  std::int64_t target_pairing = 1;
  bool primitive_only = false;
  bool effective_only = false;
};

struct EnumResult {
  /// Sorted lexicographically, no duplicates.
  std::vector<LatticeClass> solutions;
  bool complete = true;
};

/// A primitive effective isotropic class F with value = F.L.
struct IsotropicWitness {
  LatticeClass cls;
  std::int64_t value = 0;
  friend bool operator==(const IsotropicWitness&, const IsotropicWitness&) = default;
};

/// All vectors x with x^2 = s and x.L = c for a fixed anchor L (L^2 > 0).
///
/// The hyperplane x.L = c is parametrised as t p0 + K z with K an LLL-reduced
/// basis of L^perp; the norm condition becomes a positive definite rank 9 form
/// in z, enumerated Fincke-Pohst style in fraction-free integers. Per-anchor
/// preprocessing is reused across (s, c).
class CosetEnumerator {
 public:
  CosetEnumerator(const EnriquesLattice& lattice, const LatticeClass& anchor);
  ~CosetEnumerator();
  CosetEnumerator(CosetEnumerator&&) noexcept;
  CosetEnumerator& operator=(CosetEnumerator&&) noexcept;

  const LatticeClass& anchor() const;
  std::int64_t anchor_norm() const;

  /// Calls visit(x) once for every solution, unfiltered, in enumeration order.
  void for_each(std::int64_t s, std::int64_t c,
                const std::function<void(const LatticeClass&)>& visit) const;

  EnumResult enumerate(std::int64_t s, std::int64_t c, bool primitive_only,
                       bool effective_only) const;

  /// Number of solutions without materialising them.
  std::uint64_t count(std::int64_t s, std::int64_t c) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

EnumResult enumerate(const EnriquesLattice& lattice, const EnumQuery& q);
inline EnumResult enumerate(const EnumQuery& q) { return enumerate(EnriquesLattice::standard(), q); }

/// phi(L) with the lexicographically smallest minimiser.
IsotropicWitness min_pairing_isotropic(const EnriquesLattice& lattice, const LatticeClass& L);
inline IsotropicWitness min_pairing_isotropic(const LatticeClass& L) {
  return min_pairing_isotropic(EnriquesLattice::standard(), L);
}

}  // namespace enriques
