#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "enriques/isotropic_enum.hpp"
#include "enriques/lattice.hpp"

namespace enriques::oracle {

/// Sup-norm box of radius R >= 1.
struct Box {
  std::int64_t radius = 1;
};

/// Radius R such that every x with x^2 = s, x.L = c has |x_i| <= R: the
/// orthogonal part y of x satisfies -y^2 = c^2/L^2 - s and each coordinate is
/// bounded by Cauchy-Schwarz against the projected dual basis vector.
Box certified_coordinate_bound(const EnriquesLattice& lattice, const LatticeClass& L,
                               std::int64_t s, std::int64_t c);

/// Every x in the box with x^2 = s and x.L = c, sorted. On the standard
/// lattice the two hyperbolic coordinates are scanned and the E8 part is
/// walked in the Euclidean D8+ model; any other Gram matrix falls back to a
/// literal scan of the whole box.
std::vector<LatticeClass> box_solutions(const EnriquesLattice& lattice, const LatticeClass& L,
                                        std::int64_t s, std::int64_t c, Box box,
                                        bool primitive_only = false, bool effective_only = false);

/// Unfiltered, unsorted streaming form of box_solutions.
void box_for_each(const EnriquesLattice& lattice, const LatticeClass& L, std::int64_t s,
                  std::int64_t c, Box box, const std::function<void(const LatticeClass&)>& visit);

/// box_solutions over the certified bound.
std::vector<LatticeClass> certified_solutions(const EnriquesLattice& lattice, const LatticeClass& L,
                                              std::int64_t s, std::int64_t c,
                                              bool primitive_only = false,
                                              bool effective_only = false);

/// phi by ascending box scans.
IsotropicWitness naive_phi(const EnriquesLattice& lattice, const LatticeClass& L);

struct NaiveMu {
  std::int64_t value = 0;  // B.L - 2
  LatticeClass witness;
};

/// Minimal B.L - 2 over effective B, B^2 = 4, phi(B) = 2, B != L with
/// B.L <= cap; nullopt if none.
std::optional<NaiveMu> naive_mu(const EnriquesLattice& lattice, const LatticeClass& L,
                                std::int64_t cap);

/// Cartan matrix recomputed from the Euclidean simple roots.
std::array<std::array<std::int64_t, 8>, 8> euclidean_cartan();

}  // namespace enriques::oracle
