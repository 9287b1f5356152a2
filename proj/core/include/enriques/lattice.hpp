#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "enriques/checked.hpp"

namespace enriques {

inline constexpr std::size_t kRank = 10;

/// An element of Num(S) written in the fixed basis of U + E8(-1): coordinates
/// 0-1 span the hyperbolic plane (e, f), coordinates 2-9 the simple roots of
/// E8 in Bourbaki order.
class LatticeClass {
 public:
  using Coords = std::array<std::int64_t, kRank>;

  constexpr LatticeClass() = default;
  constexpr explicit LatticeClass(const Coords& coords) : coords_(coords) {}
  LatticeClass(std::initializer_list<std::int64_t> coords);

  static LatticeClass unit(std::size_t i);
  /// The isotropic generators of the U block.
  static LatticeClass e() { return unit(0); }
  static LatticeClass f() { return unit(1); }

  const Coords& coords() const { return coords_; }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::int64_t& operator[](std::size_t i) { return coords_[i]; }

  bool is_zero() const;
  /// gcd of the coordinates (0 for the zero class).
  std::int64_t content() const;
  std::int64_t max_abs() const;

  LatticeClass& operator+=(const LatticeClass& o);
  LatticeClass& operator-=(const LatticeClass& o);
  friend LatticeClass operator+(LatticeClass a, const LatticeClass& b) { return a += b; }
  friend LatticeClass operator-(LatticeClass a, const LatticeClass& b) { return a -= b; }
  friend LatticeClass operator-(const LatticeClass& a);
  friend LatticeClass operator*(std::int64_t k, const LatticeClass& a);

  /// Exact division of every coordinate; throws InvalidInput if k does not
  /// divide the class.
  LatticeClass divided_by(std::int64_t k) const;
  bool divisible_by(std::int64_t k) const;

  friend bool operator==(const LatticeClass&, const LatticeClass&) = default;
  /// Lexicographic on signed coordinates; used for all witness tie-breaks.
  friend auto operator<=>(const LatticeClass&, const LatticeClass&) = default;

  /// "v[a0,...,a9]"
  std::string str() const;

 private:
  Coords coords_{};
};

std::ostream& operator<<(std::ostream& os, const LatticeClass& x);

struct LatticeClassHash {
  std::size_t operator()(const LatticeClass& x) const noexcept;
};

/// Sorts lexicographically and removes duplicates.
void sort_unique(std::vector<LatticeClass>& v);

using GramMatrix = std::array<std::array<std::int64_t, kRank>, kRank>;

/// The Enriques lattice U + E8(-1) together with a reference class fixing the
/// positive cone. Immutable; construction validates evenness, unimodularity
/// and signature (1,9).
class EnriquesLattice {
 public:
  /// The standard lattice with reference ample class e + f.
  static const EnriquesLattice& standard();

  /// Validates every lattice invariant; throws InvalidInput on failure.
  EnriquesLattice(const GramMatrix& gram, const LatticeClass& reference_ample);

  /// Builds a lattice without the even/unimodular checks. Only symmetry,
  /// signature (1,9) and positivity of the reference class are enforced, so
  /// enumeration stays finite. Intended for mutation tests of the harness.
  static EnriquesLattice unchecked(const GramMatrix& gram, const LatticeClass& reference_ample);

  const GramMatrix& gram() const { return gram_; }
  const LatticeClass& reference_ample() const { return reference_ample_; }

  std::int64_t pairing(const LatticeClass& x, const LatticeClass& y) const;
  std::int64_t norm(const LatticeClass& x) const { return pairing(x, x); }
  /// G x, so that pairing(x, y) = dot(dual(x), y).
  LatticeClass dual(const LatticeClass& x) const;

  /// Nonzero, nonnegative square and positive against the reference class.
  bool is_num_effective(const LatticeClass& x) const;
  /// Throws InvalidInput on the zero class.
  bool is_primitive(const LatticeClass& x) const;

  /// Diagonal of the inverse Gram matrix as exact rationals (num, den).
  const std::array<std::pair<std::int64_t, std::int64_t>, kRank>& inverse_diagonal() const {
    return inverse_diagonal_;
  }

  std::int64_t determinant() const { return determinant_; }
  bool is_validated() const { return validated_; }

 private:
  struct Unchecked {};
  EnriquesLattice(const GramMatrix& gram, const LatticeClass& reference_ample, Unchecked);
  void compute_invariants();

  struct Entry {
    int i, j;
    std::int64_t g;  // off-diagonal entries are stored once and doubled
  };

  GramMatrix gram_{};
  std::vector<Entry> entries_;
  LatticeClass reference_ample_;
  std::array<std::pair<std::int64_t, std::int64_t>, kRank> inverse_diagonal_{};
  std::int64_t determinant_ = 0;
  int positive_index_ = 0;
  int negative_index_ = 0;
  bool validated_ = false;
};

/// The E8 Cartan matrix in Bourbaki numbering (node 2 attached to node 4).
const std::array<std::array<std::int64_t, 8>, 8>& e8_cartan();

/// Gram matrix of U + E8(-1).
GramMatrix enriques_gram();

/// Plain dot product of coordinate vectors (checked).
std::int64_t dot(const LatticeClass& a, const LatticeClass& b);

}  // namespace enriques
