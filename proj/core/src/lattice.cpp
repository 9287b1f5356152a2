#include "enriques/lattice.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <vector>

#include "enriques/errors.hpp"
#include "enriques/rational.hpp"

namespace enriques {

LatticeClass::LatticeClass(std::initializer_list<std::int64_t> coords) {
  if (coords.size() != kRank)
    throw InvalidInput("a lattice class needs exactly 10 coordinates, got " +
                       std::to_string(coords.size()));
  std::size_t i = 0;
  for (auto c : coords) coords_[i++] = c;
}

LatticeClass LatticeClass::unit(std::size_t i) {
  if (i >= kRank) throw InvalidInput("basis index out of range");
  LatticeClass x;
  x.coords_[i] = 1;
  return x;
}

bool LatticeClass::is_zero() const {
  for (auto c : coords_)
    if (c != 0) return false;
  return true;
}

std::int64_t LatticeClass::content() const {
  std::int64_t g = 0;
  for (auto c : coords_) g = std::gcd(g, c < 0 ? -c : c);
  return g;
}

std::int64_t LatticeClass::max_abs() const {
  std::int64_t m = 0;
  for (auto c : coords_) m = std::max(m, c < 0 ? -c : c);
  return m;
}

LatticeClass& LatticeClass::operator+=(const LatticeClass& o) {
  for (std::size_t i = 0; i < kRank; ++i) coords_[i] = checked::add(coords_[i], o.coords_[i]);
  return *this;
}

LatticeClass& LatticeClass::operator-=(const LatticeClass& o) {
  for (std::size_t i = 0; i < kRank; ++i) coords_[i] = checked::sub(coords_[i], o.coords_[i]);
  return *this;
}

LatticeClass operator-(const LatticeClass& a) {
  LatticeClass r;
  for (std::size_t i = 0; i < kRank; ++i) r.coords_[i] = checked::sub(0, a.coords_[i]);
  return r;
}

LatticeClass operator*(std::int64_t k, const LatticeClass& a) {
  LatticeClass r;
  for (std::size_t i = 0; i < kRank; ++i) r.coords_[i] = checked::mul(k, a.coords_[i]);
  return r;
}

bool LatticeClass::divisible_by(std::int64_t k) const {
  if (k == 0) return false;
  for (auto c : coords_)
    if (c % k != 0) return false;
  return true;
}

LatticeClass LatticeClass::divided_by(std::int64_t k) const {
  if (!divisible_by(k)) throw InvalidInput(str() + " is not divisible by " + std::to_string(k));
  LatticeClass r;
  for (std::size_t i = 0; i < kRank; ++i) r.coords_[i] = coords_[i] / k;
  return r;
}

std::string LatticeClass::str() const {
  std::ostringstream os;
  os << "v[";
  for (std::size_t i = 0; i < kRank; ++i) os << (i ? "," : "") << coords_[i];
  os << "]";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const LatticeClass& x) { return os << x.str(); }

std::size_t LatticeClassHash::operator()(const LatticeClass& x) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto c : x.coords()) {
    h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

void sort_unique(std::vector<LatticeClass>& v) {
  // Pack into 12-bit offset fields when every coordinate is small; the
  // packed order is the lexicographic order.
  constexpr std::int64_t kOff = 2047;
  bool small = true;
  for (const auto& x : v) small = small && x.max_abs() <= kOff;
  if (!small) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return;
  }
  using u128 = unsigned __int128;
  std::vector<u128> keys(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    u128 key = 0;
    for (std::size_t i = 0; i < kRank; ++i) key = (key << 12) | static_cast<u128>(v[k][i] + kOff);
    keys[k] = key;
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  v.resize(keys.size());
  for (std::size_t k = 0; k < keys.size(); ++k) {
    u128 key = keys[k];
    for (std::size_t i = kRank; i-- > 0;) {
      v[k][i] = static_cast<std::int64_t>(key & 0xfff) - kOff;
      key >>= 12;
    }
  }
}

std::int64_t dot(const LatticeClass& a, const LatticeClass& b) {
  i128 s = 0;
  for (std::size_t i = 0; i < kRank; ++i) s += static_cast<i128>(a[i]) * b[i];
  return checked::narrow(s);
}

const std::array<std::array<std::int64_t, 8>, 8>& e8_cartan() {
  // Bourbaki: chain 1-3-4-5-6-7-8, node 2 attached to node 4.
  static const std::array<std::array<std::int64_t, 8>, 8> cartan = {{
      {2, 0, -1, 0, 0, 0, 0, 0},
      {0, 2, 0, -1, 0, 0, 0, 0},
      {-1, 0, 2, -1, 0, 0, 0, 0},
      {0, -1, -1, 2, -1, 0, 0, 0},
      {0, 0, 0, -1, 2, -1, 0, 0},
      {0, 0, 0, 0, -1, 2, -1, 0},
      {0, 0, 0, 0, 0, -1, 2, -1},
      {0, 0, 0, 0, 0, 0, -1, 2},
  }};
  return cartan;
}

GramMatrix enriques_gram() {
  GramMatrix g{};
  g[0][1] = g[1][0] = 1;
  const auto& c = e8_cartan();
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) g[i + 2][j + 2] = -c[i][j];
  return g;
}

namespace {

using RMatrix = std::vector<std::vector<Rational>>;

RMatrix to_rational(const GramMatrix& g) {
  RMatrix m(kRank, std::vector<Rational>(kRank));
  for (std::size_t i = 0; i < kRank; ++i)
    for (std::size_t j = 0; j < kRank; ++j) m[i][j] = Rational(g[i][j]);
  return m;
}

// Congruence diagonalisation P^T G P with det P = +-1; returns the diagonal.
std::vector<Rational> congruence_diagonal(const GramMatrix& g) {
  RMatrix a = to_rational(g);
  const std::size_t n = kRank;
  std::vector<Rational> diag;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k].sign() == 0) {
      std::size_t j = k + 1;
      while (j < n && a[k][j].sign() == 0) ++j;
      if (j == n) {
        diag.push_back(Rational(0));
        continue;
      }
      if (a[j][j].sign() != 0) {
        std::swap(a[k], a[j]);
        for (auto& row : a) std::swap(row[k], row[j]);
      } else {
        // Replace basis vector k by k + j: new diagonal is 2 a[k][j] != 0.
        for (std::size_t c = 0; c < n; ++c) a[k][c] += a[j][c];
        for (std::size_t r = 0; r < n; ++r) a[r][k] += a[r][j];
      }
    }
    const Rational pivot = a[k][k];
    diag.push_back(pivot);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k].sign() == 0) continue;
      const Rational factor = a[i][k] / pivot;
      for (std::size_t c = k; c < n; ++c) a[i][c] -= factor * a[k][c];
      for (std::size_t r = k; r < n; ++r) a[r][i] -= factor * a[r][k];
    }
  }
  return diag;
}

// Exact Gauss-Jordan inverse; returns false if singular.
bool inverse(const GramMatrix& g, RMatrix& inv) {
  RMatrix a = to_rational(g);
  const std::size_t n = kRank;
  inv.assign(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Rational(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].sign() == 0) ++piv;
    if (piv == n) return false;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Rational p = a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] /= p;
      inv[col][c] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].sign() == 0) continue;
      const Rational factor = a[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= factor * a[col][c];
        inv[r][c] -= factor * inv[col][c];
      }
    }
  }
  return true;
}

}  // namespace

EnriquesLattice::EnriquesLattice(const GramMatrix& gram, const LatticeClass& reference_ample,
                                 Unchecked)
    : gram_(gram), reference_ample_(reference_ample) {
  for (std::size_t i = 0; i < kRank; ++i)
    for (std::size_t j = 0; j < kRank; ++j)
      if (gram_[i][j] != gram_[j][i]) throw InvalidInput("Gram matrix is not symmetric");
  for (int i = 0; i < static_cast<int>(kRank); ++i)
    for (int j = i; j < static_cast<int>(kRank); ++j)
      if (gram_[i][j] != 0) entries_.push_back({i, j, gram_[i][j]});
  compute_invariants();
  if (positive_index_ != 1 || negative_index_ != 9)
    throw InvalidInput("Gram matrix does not have signature (1,9)");
  if (norm(reference_ample_) <= 0)
    throw InvalidInput("reference ample class must have positive square");
}

EnriquesLattice::EnriquesLattice(const GramMatrix& gram, const LatticeClass& reference_ample)
    : EnriquesLattice(gram, reference_ample, Unchecked{}) {
  for (std::size_t i = 0; i < kRank; ++i)
    if (gram_[i][i] % 2 != 0) throw InvalidInput("Gram matrix is not even");
  if (determinant_ != 1 && determinant_ != -1)
    throw InvalidInput("Gram matrix is not unimodular (det " + std::to_string(determinant_) + ")");
  for (const auto& [num, den] : inverse_diagonal_)
    if (den != 1) throw InvalidInput("inverse Gram matrix is not integral");
  validated_ = true;
}

EnriquesLattice EnriquesLattice::unchecked(const GramMatrix& gram,
                                           const LatticeClass& reference_ample) {
  return EnriquesLattice(gram, reference_ample, Unchecked{});
}

void EnriquesLattice::compute_invariants() {
  const auto diag = congruence_diagonal(gram_);
  Rational det(1);
  positive_index_ = negative_index_ = 0;
  for (const auto& d : diag) {
    det *= d;
    if (d.sign() > 0) ++positive_index_;
    if (d.sign() < 0) ++negative_index_;
  }
  if (!det.is_integer()) throw InvalidInput("non-integral determinant");
  determinant_ = checked::narrow(det.num());
  RMatrix inv;
  if (!inverse(gram_, inv)) throw InvalidInput("Gram matrix is singular");
  for (std::size_t i = 0; i < kRank; ++i) {
    inverse_diagonal_[i] = {checked::narrow(inv[i][i].num()), checked::narrow(inv[i][i].den())};
  }
  // Full integrality of the inverse (not just the diagonal) for unimodular input.
  bool integral = true;
  for (const auto& row : inv)
    for (const auto& v : row) integral = integral && v.is_integer();
  if (!integral && (determinant_ == 1 || determinant_ == -1))
    throw InvalidInput("inverse of a unimodular Gram matrix is not integral");
}

const EnriquesLattice& EnriquesLattice::standard() {
  static const EnriquesLattice lattice(enriques_gram(), LatticeClass::e() + LatticeClass::f());
  return lattice;
}

LatticeClass EnriquesLattice::dual(const LatticeClass& x) const {
  LatticeClass r;
  for (std::size_t i = 0; i < kRank; ++i) {
    i128 s = 0;
    for (std::size_t j = 0; j < kRank; ++j) s += static_cast<i128>(gram_[i][j]) * x[j];
    r[i] = checked::narrow(s);
  }
  return r;
}

std::int64_t EnriquesLattice::pairing(const LatticeClass& x, const LatticeClass& y) const {
  std::int64_t fast = 0;
  bool ok = true;
  for (const auto& e : entries_) {
    std::int64_t t, u;
    ok = ok && !__builtin_mul_overflow(x[e.i], y[e.j], &t);
    if (e.i != e.j) {
      ok = ok && !__builtin_mul_overflow(x[e.j], y[e.i], &u);
      ok = ok && !__builtin_add_overflow(t, u, &t);
    }
    ok = ok && !__builtin_mul_overflow(t, e.g, &t);
    ok = ok && !__builtin_add_overflow(fast, t, &fast);
  }
  if (ok) return fast;
  i128 s = 0;
  for (const auto& e : entries_) {
    i128 t = static_cast<i128>(x[e.i]) * y[e.j];
    if (e.i != e.j) t = checked::add(t, static_cast<i128>(x[e.j]) * y[e.i]);
    s = checked::add(s, checked::mul(t, static_cast<i128>(e.g)));
  }
  return checked::narrow(s);
}

bool EnriquesLattice::is_num_effective(const LatticeClass& x) const {
  if (x.is_zero()) return false;
  if (norm(x) < 0) return false;
  return pairing(x, reference_ample_) > 0;
}

bool EnriquesLattice::is_primitive(const LatticeClass& x) const {
  if (x.is_zero()) throw InvalidInput("primitivity is undefined for the zero class");
  return x.content() == 1;
}

}  // namespace enriques
