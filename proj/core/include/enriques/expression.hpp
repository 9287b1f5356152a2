#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "enriques/lattice.hpp"

namespace enriques {

using Bindings = std::map<std::string, LatticeClass>;

struct ClassExpression {
  std::string source;
  LatticeClass resolved;
  /// Names bound while evaluating, including those passed in.
  Bindings bindings;
};

/// Pairings requested between named isotropic classes; keys are ordered
/// (first < second).
using PairingSpec = std::map<std::pair<std::string, std::string>, std::int64_t>;

/// Parses and evaluates
///
///   program   := (let ';')* expr
///   let       := 'let' ident (',' ident)* '=' (iso | expr)
///   iso       := 'isotropic' '(' [pair (',' pair)*] ')'
///   pair      := ident '.' ident '=' int
///   expr      := ['-'] term (('+'|'-') term)*
///   term      := [int '*'] atom
///   atom      := 'v[' int (',' int){9} ']' | ident | '(' expr ')'
///
/// Throws SyntaxError with a character offset, UnboundName, or
/// UnsatisfiablePairingSpec.
ClassExpression parse_class(const std::string& text, const Bindings& env = {},
                            const EnriquesLattice& lattice = EnriquesLattice::standard());

/// Concrete primitive effective isotropic classes with the requested pairings,
/// every pair given. A pairing of 0 identifies two names. The first class is e;
/// the search is deterministic and returns the lexicographically first
/// realization in its search order.
std::vector<LatticeClass> realize_isotropic(const EnriquesLattice& lattice, const std::vector<std::string>& names,
                                            const PairingSpec& pairs);

}  // namespace enriques
