#include "enriques/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "enriques/rational.hpp"

namespace enriques::oracle {

namespace {

// Doubled Euclidean coordinates of the E8 simple roots, Bourbaki numbering.
constexpr std::array<std::array<std::int64_t, 8>, 8> kRoots2 = {{
    {1, -1, -1, -1, -1, -1, -1, 1},
    {2, 2, 0, 0, 0, 0, 0, 0},
    {-2, 2, 0, 0, 0, 0, 0, 0},
    {0, -2, 2, 0, 0, 0, 0, 0},
    {0, 0, -2, 2, 0, 0, 0, 0},
    {0, 0, 0, -2, 2, 0, 0, 0},
    {0, 0, 0, 0, -2, 2, 0, 0},
    {0, 0, 0, 0, 0, -2, 2, 0},
}};

struct EuclideanModel {
  // x_E = T u / 4 for u = 2v in doubled coordinates.
  std::array<std::array<std::int64_t, 8>, 8> T{};

  EuclideanModel() {
    // S has the doubled roots as columns; invert exactly.
    std::vector<std::vector<Rational>> a(8, std::vector<Rational>(16));
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) a[i][j] = Rational(kRoots2[j][i]);
      a[i][8 + i] = Rational(1);
    }
    for (int col = 0; col < 8; ++col) {
      int piv = col;
      while (a[piv][col].sign() == 0) ++piv;
      std::swap(a[piv], a[col]);
      const Rational p = a[col][col];
      for (auto& v : a[col]) v /= p;
      for (int r = 0; r < 8; ++r) {
        if (r == col || a[r][col].sign() == 0) continue;
        const Rational f = a[r][col];
        for (int c = 0; c < 16; ++c) a[r][c] -= f * a[col][c];
      }
    }
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        const Rational v = a[i][8 + j] * Rational(4);
        if (!v.is_integer()) throw std::logic_error("unexpected denominator in root inverse");
        T[i][j] = checked::narrow(v.num());
      }
  }
};

const EuclideanModel& model() {
  static const EuclideanModel m;
  return m;
}

bool is_standard(const EnriquesLattice& lattice) { return lattice.gram() == enriques_gram(); }

// floor(a + sqrt(X)) for a >= 0, X >= 0.
i128 floor_shift_sqrt(const Rational& a, const Rational& X) {
  i128 k = a.floor() + floor_sqrt(X) + 1;
  while (true) {
    const Rational d = Rational(k) - a;
    if (d.sign() <= 0 || d * d <= X) return k;
    --k;
  }
}

struct ScanState {
  std::array<int, 8> order{};
  std::array<std::int64_t, 8> lambda{};       // integer linear form on u, permuted
  std::array<std::int64_t, 9> lambda_tail{};  // sum of squares of lambda[k..]
  std::array<std::int64_t, 8> u{};            // in permuted order
  int parity = 0;
};

std::int64_t isqrt64(std::int64_t v) { return static_cast<std::int64_t>(isqrt128(v)); }

template <class Emit>
void walk(ScanState& st, int k, std::int64_t norm_left, std::int64_t target, std::int64_t sum,
          Emit&& emit) {
  if (k == 6 && st.lambda[7] != 0) {
    // v6^2 + v7^2 = N and l6 v6 + l7 v7 = t meet in at most two points.
    const std::int64_t l6 = st.lambda[6], l7 = st.lambda[7];
    const std::int64_t q = l6 * l6 + l7 * l7;  // lambdas are bounded by 4 * 2^20 * 8
    const i128 disc128 = static_cast<i128>(q) * norm_left - static_cast<i128>(target) * target;
    if (disc128 < 0) return;
    const i128 r128 = isqrt128(disc128);
    if (r128 * r128 != disc128) return;
    const i128 a7 = l7 < 0 ? -l7 : l7;
    for (int sign : {1, -1}) {
      const i128 num = static_cast<i128>(target) * l6 + sign * a7 * r128;
      if (num % q != 0) {
        if (r128 == 0) break;
        continue;
      }
      const i128 v6 = num / q;
      const i128 rest = target - l6 * v6;
      if (rest % l7 == 0) {
        const i128 v7 = rest / l7;
        if ((v6 & 1) == st.parity && (v7 & 1) == st.parity && v6 * v6 + v7 * v7 == norm_left &&
            ((sum + v6 + v7) & 3) == 0) {
          st.u[6] = static_cast<std::int64_t>(v6);
          st.u[7] = static_cast<std::int64_t>(v7);
          emit();
        }
      }
      if (r128 == 0) break;
    }
    return;
  }
  if (k == 7) {
    const std::int64_t l = st.lambda[7];
    auto leaf = [&](std::int64_t v) {
      if ((v & 1) != st.parity || v * v != norm_left) return;
      if (l * v != target || ((sum + v) & 3) != 0) return;
      st.u[7] = v;
      emit();
    };
    if (l != 0) {
      if (target % l == 0) leaf(target / l);
      return;
    }
    const std::int64_t r = isqrt64(norm_left);
    leaf(r);
    if (r != 0) leaf(-r);
    return;
  }
  std::int64_t lo = -isqrt64(norm_left), hi = -lo;
  const std::int64_t tail = st.lambda_tail[k + 1];
  if (tail != 0) {
    // (t - l v)^2 <= tail (N - v^2) is a quadratic in v; shrink to its roots.
    const i128 l = st.lambda[k], t = target;
    const i128 q = l * l + tail;
    const i128 d = static_cast<i128>(tail) * (q * norm_left - t * t);
    if (d < 0) return;
    const i128 r = isqrt128(d) + 1;
    lo = std::max<std::int64_t>(lo, static_cast<std::int64_t>(floor_div(t * l - r, q)));
    hi = std::min<std::int64_t>(hi, static_cast<std::int64_t>(ceil_div(t * l + r, q)));
  }
  if ((lo & 1) != st.parity) ++lo;
  for (std::int64_t v = lo; v <= hi; v += 2) {
    const std::int64_t left = norm_left - v * v;
    if (left < 0) continue;
    const std::int64_t t = target - st.lambda[k] * v;
    // Cauchy-Schwarz: the rest must reach t within the remaining norm.
    if (tail == 0) {
      if (t != 0) continue;
    } else if (static_cast<i128>(t) * t > static_cast<i128>(tail) * left) {
      continue;
    }
    st.u[k] = v;
    walk(st, k + 1, left, t, sum + v, emit);
  }
}

void fast_scan(const EnriquesLattice& lattice, const LatticeClass& L, std::int64_t s,
               std::int64_t c, std::int64_t R,
               const std::function<void(const LatticeClass&)>& visit) {
  if (s % 2 != 0) return;
  if (R > (std::int64_t{1} << 20)) throw OverflowError("oracle box radius too large");
  const auto& T = model().T;
  const LatticeClass w = lattice.dual(L);
  // lambda . u = sum_i w_{i+2} x_{i+2} with x_E = T u / 4, scaled by 4.
  std::array<std::int64_t, 8> lam4{};
  for (int j = 0; j < 8; ++j)
    for (int i = 0; i < 8; ++i) lam4[j] = checked::add(lam4[j], checked::mul(T[i][j], w[i + 2]));
  ScanState st;
  std::iota(st.order.begin(), st.order.end(), 0);
  std::stable_sort(st.order.begin(), st.order.end(),
                   [&](int a, int b) { return std::llabs(lam4[a]) < std::llabs(lam4[b]); });
  for (int k = 0; k < 8; ++k) st.lambda[k] = lam4[st.order[k]];
  st.lambda_tail[8] = 0;
  for (int k = 7; k >= 0; --k)
    st.lambda_tail[k] = checked::add(st.lambda_tail[k + 1], checked::mul(st.lambda[k], st.lambda[k]));

  for (std::int64_t x0 = -R; x0 <= R; ++x0) {
    for (std::int64_t x1 = -R; x1 <= R; ++x1) {
      const std::int64_t m = checked::sub(2 * x0 * x1, s);  // E8 norm of the remaining part
      if (m < 0) continue;
      const std::int64_t norm4 = checked::mul(4, m);
      // 4 (c - w0 x0 - w1 x1) = lam4 . u
      const std::int64_t target =
          checked::mul(4, checked::sub(c, checked::add(checked::mul(w[0], x0), checked::mul(w[1], x1))));
      if (st.lambda_tail[0] == 0) {
        if (target != 0) continue;
      } else if (static_cast<i128>(target) * target > static_cast<i128>(st.lambda_tail[0]) * norm4) {
        continue;
      }
      for (int parity = 0; parity < 2; ++parity) {
        st.parity = parity;
        walk(st, 0, norm4, target, 0, [&]() {
          std::array<std::int64_t, 8> u{};
          for (int k = 0; k < 8; ++k) u[st.order[k]] = st.u[k];
          LatticeClass x;
          x[0] = x0;
          x[1] = x1;
          for (int i = 0; i < 8; ++i) {
            std::int64_t acc = 0;
            for (int j = 0; j < 8; ++j) acc += T[i][j] * u[j];
            if (acc % 4 != 0) throw std::logic_error("D8+ vector with non-integral root coordinates");
            x[i + 2] = acc / 4;
          }
          if (x.max_abs() > R) return;
          visit(x);
        });
      }
    }
  }
}

void literal_scan(const EnriquesLattice& lattice, const LatticeClass& L, std::int64_t s,
                  std::int64_t c, std::int64_t R,
                  const std::function<void(const LatticeClass&)>& visit) {
  const double cells = std::pow(static_cast<double>(2 * R + 1), static_cast<double>(kRank));
  if (cells > 2e9) throw InvalidInput("box too large for a literal scan");
  const LatticeClass w = lattice.dual(L);
  LatticeClass x;
  for (std::size_t i = 0; i < kRank; ++i) x[i] = -R;
  while (true) {
    if (dot(w, x) == c && lattice.norm(x) == s) visit(x);
    std::size_t i = kRank;
    while (i > 0) {
      --i;
      if (x[i] < R) {
        ++x[i];
        break;
      }
      x[i] = -R;
      if (i == 0) return;
    }
  }
}

}  // namespace

std::array<std::array<std::int64_t, 8>, 8> euclidean_cartan() {
  std::array<std::array<std::int64_t, 8>, 8> c{};
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      std::int64_t d = 0;
      for (int k = 0; k < 8; ++k) d += kRoots2[i][k] * kRoots2[j][k];
      c[i][j] = d / 4;
    }
  return c;
}

Box certified_coordinate_bound(const EnriquesLattice& lattice, const LatticeClass& L,
                               std::int64_t s, std::int64_t c) {
  const std::int64_t n = lattice.norm(L);
  if (n <= 0) throw InvalidAnchor("certified bound needs L^2 > 0, got " + std::to_string(n));
  const Rational rho = Rational(static_cast<i128>(c) * c, n) - Rational(s);
  if (rho.sign() < 0) return Box{1};
  i128 R = 1;
  const auto& inv = lattice.inverse_diagonal();
  for (std::size_t i = 0; i < kRank; ++i) {
    const Rational coef = Rational(static_cast<i128>(L[i]) * L[i], n) - Rational(inv[i].first, inv[i].second);
    if (coef.sign() < 0) throw std::logic_error("orthogonal complement of the anchor is not definite");
    const Rational centre = Rational(abs128(static_cast<i128>(c) * L[i]), n);
    R = std::max(R, floor_shift_sqrt(centre, rho * coef));
  }
  if (R > kBoundLimit) throw OverflowError("certified box radius exceeds 2^40");
  return Box{static_cast<std::int64_t>(R)};
}

void box_for_each(const EnriquesLattice& lattice, const LatticeClass& L, std::int64_t s,
                  std::int64_t c, Box box, const std::function<void(const LatticeClass&)>& visit) {
  if (box.radius < 1) throw InvalidInput("box radius must be at least 1");
  if (is_standard(lattice))
    fast_scan(lattice, L, s, c, box.radius, visit);
  else
    literal_scan(lattice, L, s, c, box.radius, visit);
}

std::vector<LatticeClass> box_solutions(const EnriquesLattice& lattice, const LatticeClass& L,
                                        std::int64_t s, std::int64_t c, Box box,
                                        bool primitive_only, bool effective_only) {
  std::vector<LatticeClass> out;
  box_for_each(lattice, L, s, c, box, [&](const LatticeClass& x) {
    if (primitive_only && (x.is_zero() || x.content() != 1)) return;
    if (effective_only && !lattice.is_num_effective(x)) return;
    out.push_back(x);
  });
  sort_unique(out);
  return out;
}

std::vector<LatticeClass> certified_solutions(const EnriquesLattice& lattice, const LatticeClass& L,
                                              std::int64_t s, std::int64_t c, bool primitive_only,
                                              bool effective_only) {
  const std::int64_t n = lattice.norm(L);
  if (n <= 0) throw InvalidAnchor("anchor must have positive square");
  if (static_cast<i128>(s) * n > static_cast<i128>(c) * c) return {};
  return box_solutions(lattice, L, s, c, certified_coordinate_bound(lattice, L, s, c),
                       primitive_only, effective_only);
}

IsotropicWitness naive_phi(const EnriquesLattice& lattice, const LatticeClass& L) {
  const std::int64_t n = lattice.norm(L);
  if (n <= 0 || !lattice.is_num_effective(L)) throw InvalidInput("naive phi needs an effective class of positive square");
  for (std::int64_t c = 1; static_cast<i128>(c) * c <= n; ++c) {
    auto sols = certified_solutions(lattice, L, 0, c, true, true);
    if (!sols.empty()) return {sols.front(), c};
  }
  throw TheoremViolation("naive phi: no isotropic class below sqrt(L^2)");
}

std::optional<NaiveMu> naive_mu(const EnriquesLattice& lattice, const LatticeClass& L,
                                std::int64_t cap) {
  const std::int64_t n = lattice.norm(L);
  if (n <= 0 || !lattice.is_num_effective(L)) throw InvalidInput("naive mu needs an effective class of positive square");
  for (std::int64_t c = 1; c <= cap; ++c) {
    if (static_cast<i128>(c) * c < 4 * static_cast<i128>(n)) continue;
    for (const auto& B : certified_solutions(lattice, L, 4, c, false, true)) {
      if (B == L) continue;
      if (certified_solutions(lattice, B, 0, 1, true, true).empty()) return NaiveMu{c - 2, B};
    }
  }
  return std::nullopt;
}

}  // namespace enriques::oracle
