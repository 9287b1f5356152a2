#pragma once

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "enriques/expression.hpp"
#include "enriques/lattice.hpp"

namespace enriques::test {

inline LatticeClass cls(const std::string& expr) { return parse_class(expr).resolved; }

inline const LatticeClass kE = LatticeClass::e();
inline const LatticeClass kF = LatticeClass::f();

struct FixtureCase {
  std::string id;
  std::int64_t L_squared = 0;
  std::int64_t phi = 0;
  std::string expression;
};

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

/// `id | L^2 | phi | expression`, '#' starts a comment line.
inline std::vector<FixtureCase> load_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<FixtureCase> out;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> parts;
    std::stringstream ss(line);
    std::string part;
    while (std::getline(ss, part, '|')) parts.push_back(trim(part));
    if (parts.size() != 4) throw std::runtime_error("bad fixture line: " + line);
    out.push_back({parts[0], std::stoll(parts[1]), std::stoll(parts[2]), parts[3]});
  }
  return out;
}

inline std::string fixture_path() { return std::string(ENRIQUES_FIXTURE_DIR) + "/decompositions.txt"; }

/// Effective classes of positive square with coordinates in [-r, r], drawn
/// uniformly from the box and rejected otherwise.
inline std::vector<LatticeClass> random_effective(std::size_t count, std::int64_t r, std::uint64_t seed) {
  const auto& lat = EnriquesLattice::standard();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(-r, r);
  std::vector<LatticeClass> out;
  while (out.size() < count) {
    LatticeClass x;
    for (std::size_t i = 0; i < kRank; ++i) x[i] = coord(rng);
    if (lat.is_num_effective(x) && lat.norm(x) > 0) out.push_back(x);
  }
  return out;
}

}  // namespace enriques::test
