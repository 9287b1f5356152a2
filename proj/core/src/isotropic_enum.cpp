#include "enriques/isotropic_enum.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "enriques/rational.hpp"
#include "intmat.hpp"

namespace enriques {

namespace {

constexpr int kDim = static_cast<int>(kRank) - 1;

using detail::BigInt;
using detail::Mat;

// Unimodular V with w^T V = (g, 0, ..., 0), g = gcd(w) > 0. Columns of V are
// returned as lattice classes.
std::array<LatticeClass, kRank> hermite_columns(const LatticeClass& w, std::int64_t& g) {
  std::array<LatticeClass, kRank> cols;
  for (std::size_t j = 0; j < kRank; ++j) cols[j] = LatticeClass::unit(j);
  std::array<std::int64_t, kRank> r = w.coords();
  while (true) {
    int p = -1;
    for (int j = 0; j < static_cast<int>(kRank); ++j)
      if (r[j] != 0 && (p < 0 || std::llabs(r[j]) < std::llabs(r[p]))) p = j;
    if (p < 0) throw InvalidAnchor("anchor pairs to zero with every class");
    bool done = true;
    for (int j = 0; j < static_cast<int>(kRank); ++j) {
      if (j == p || r[j] == 0) continue;
      const std::int64_t q = r[j] / r[p];
      r[j] -= q * r[p];
      cols[j] -= q * cols[p];
      if (r[j] != 0) done = false;
    }
    if (done) {
      std::swap(cols[0], cols[p]);
      std::swap(r[0], r[p]);
      if (r[0] < 0) {
        r[0] = -r[0];
        cols[0] = -cols[0];
      }
      g = r[0];
      return cols;
    }
  }
}

template <class Int>
Mat<Int> to_mat(const Mat<i128>& m) {
  Mat<Int> out(m.size(), std::vector<Int>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = Int(m[i][j]);
  return out;
}

i128 big_to_i128(const BigInt& v) {
  static const BigInt lim = BigInt(1) << 126;
  if (v >= lim || v <= -lim) throw OverflowError("reduction coefficient too large");
  const bool neg = v < 0;
  BigInt a = neg ? BigInt(-v) : v;
  i128 out = 0;
  const BigInt mask = (BigInt(1) << 63) - 1;
  int shift = 0;
  while (a != 0) {
    const auto chunk = static_cast<std::uint64_t>(a & mask);
    out |= static_cast<i128>(chunk) << shift;
    a >>= 63;
    shift += 63;
  }
  return neg ? -out : out;
}

void check_bound(i128 v, const char* what) {
  if (abs128(v) > kBoundLimit) throw OverflowError(std::string("bound certificate exceeds 2^40: ") + what);
}

}  // namespace

struct CosetEnumerator::Impl {
  EnriquesLattice lattice;
  LatticeClass L;
  LatticeClass w;  // G L
  std::int64_t n = 0;
  std::int64_t g = 0;
  LatticeClass p0;
  std::array<LatticeClass, kDim> K;
  Mat<i128> Q;          // -K^T G K, positive definite
  Mat<i128> N;          // Bareiss upper triangle of Q
  std::array<i128, kDim> omega{};  // Lambda / (D_i D_{i-1})
  i128 Lambda = 1;
  std::int64_t p0sq = 0;
  std::array<Rational, kDim> qinv_h;  // Q^{-1} h

  Impl(const EnriquesLattice& lat, const LatticeClass& anchor) : lattice(lat), L(anchor) {
    n = lattice.norm(L);
    if (n <= 0) throw InvalidAnchor("anchor " + L.str() + " has non-positive square " + std::to_string(n));
    w = lattice.dual(L);
    auto cols = hermite_columns(w, g);
    p0 = cols[0];
    for (int j = 0; j < kDim; ++j) K[j] = cols[j + 1];

    Mat<i128> q(kDim, std::vector<i128>(kDim));
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) q[i][j] = -static_cast<i128>(lattice.pairing(K[i], K[j]));

    Mat<i128> basis;
    try {
      Mat<i128> gram = q;
      detail::lll_gram(gram, basis);
    } catch (const OverflowError&) {
      Mat<BigInt> gram = to_mat<BigInt>(q);
      Mat<BigInt> bb;
      detail::lll_gram(gram, bb);
      basis.assign(kDim, std::vector<i128>(kDim));
      for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) basis[i][j] = big_to_i128(bb[i][j]);
    }
    std::array<LatticeClass, kDim> reduced;
    for (int i = 0; i < kDim; ++i) {
      LatticeClass v;
      for (int j = 0; j < kDim; ++j) {
        if (basis[i][j] != 0) v += checked::narrow(basis[i][j]) * K[j];
      }
      reduced[i] = v;
    }
    K = reduced;
    rebuild_form();

    // Shift p0 towards the centre so the offsets stay small.
    std::array<std::int64_t, kDim> shift{};
    bool any = false;
    for (int i = 0; i < kDim; ++i) {
      shift[i] = checked::narrow(qinv_h[i].round());
      any = any || shift[i] != 0;
    }
    if (any) {
      for (int i = 0; i < kDim; ++i)
        if (shift[i] != 0) p0 += shift[i] * K[i];
      rebuild_form();
    }

    N = detail::bareiss_upper(Q);
    i128 prev = 1;
    std::array<i128, kDim> den{};
    for (int i = 0; i < kDim; ++i) {
      den[i] = checked::mul(N[i][i], prev);
      prev = N[i][i];
      Lambda = checked::mul(Lambda / gcd128(Lambda, den[i]), den[i]);
    }
    for (int i = 0; i < kDim; ++i) omega[i] = Lambda / den[i];
  }

  // Recomputes Q, p0^2 and Q^{-1} h from K and p0.
  void rebuild_form() {
    Q.assign(kDim, std::vector<i128>(kDim));
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) Q[i][j] = -static_cast<i128>(lattice.pairing(K[i], K[j]));
    p0sq = lattice.norm(p0);
    // Solve Q a = h exactly.
    std::vector<std::vector<Rational>> a(kDim, std::vector<Rational>(kDim + 1));
    for (int i = 0; i < kDim; ++i) {
      for (int j = 0; j < kDim; ++j) a[i][j] = Rational(Q[i][j]);
      a[i][kDim] = Rational(lattice.pairing(K[i], p0));
    }
    for (int col = 0; col < kDim; ++col) {
      int piv = col;
      while (piv < kDim && a[piv][col].sign() == 0) ++piv;
      if (piv == kDim) throw InvalidAnchor("degenerate orthogonal complement");
      std::swap(a[piv], a[col]);
      const Rational p = a[col][col];
      for (int c = col; c <= kDim; ++c) a[col][c] /= p;
      for (int r = 0; r < kDim; ++r) {
        if (r == col || a[r][col].sign() == 0) continue;
        const Rational f = a[r][col];
        for (int c = col; c <= kDim; ++c) a[r][c] -= f * a[col][c];
      }
    }
    for (int i = 0; i < kDim; ++i) qinv_h[i] = a[i][kDim];
  }

  struct Run {
    std::int64_t s, c, t;
    i128 delta;
    std::array<i128, kDim> A{};
    std::array<i128, kDim> y{};
    std::array<std::array<i128, kDim + 1>, kDim> cs{};  // cs[k][j] = sum_{l>=j} N[k][l] y_l
    std::array<LatticeClass, kDim + 1> partial;  // partial[i] = t p0 + sum_{j>=i} z_j K_j
  };

  void validate_query(std::int64_t s, std::int64_t c) const {
    if (c < 1) throw InfeasibleQuery("target pairing must be at least 1, got " + std::to_string(c));
    if (checked::mul(static_cast<i128>(s), static_cast<i128>(n)) > checked::mul(static_cast<i128>(c), static_cast<i128>(c)))
      throw InfeasibleQuery("no real solution: s*L^2 = " + to_string(static_cast<i128>(s) * n) +
                            " exceeds c^2 = " + to_string(static_cast<i128>(c) * c));
  }

  template <class Visit>
  void run(std::int64_t s, std::int64_t c, Visit&& visit) const {
    validate_query(s, c);
    if (s % 2 != 0 && lattice.is_validated()) return;  // even lattice
    if (c % g != 0) return;
    Run st;
    st.s = s;
    st.c = c;
    st.t = c / g;
    // a = t Q^{-1} h = A / delta
    i128 delta = 1;
    std::array<Rational, kDim> a;
    for (int i = 0; i < kDim; ++i) {
      a[i] = qinv_h[i] * Rational(static_cast<i128>(st.t));
      delta = checked::mul(delta / gcd128(delta, a[i].den()), a[i].den());
    }
    st.delta = delta;
    for (int i = 0; i < kDim; ++i) st.A[i] = checked::mul(a[i].num(), delta / a[i].den());
    // P = delta^2 (t^2 p0^2 - s) + A^T Q A
    i128 aqa = 0;
    for (int i = 0; i < kDim; ++i) {
      i128 row = 0;
      for (int j = 0; j < kDim; ++j) row = checked::add(row, checked::mul(Q[i][j], st.A[j]));
      aqa = checked::add(aqa, checked::mul(st.A[i], row));
    }
    const i128 t = st.t;
    const i128 d2 = checked::mul(delta, delta);
    const i128 P = checked::add(checked::mul(d2, checked::sub(checked::mul(checked::mul(t, t), static_cast<i128>(p0sq)), static_cast<i128>(s))), aqa);
    // Consistency with the real picture: P / delta^2 = c^2 / L^2 - s.
    if (checked::mul(P, static_cast<i128>(n)) !=
        checked::mul(d2, checked::sub(checked::mul(static_cast<i128>(c), static_cast<i128>(c)), checked::mul(static_cast<i128>(s), static_cast<i128>(n)))))
      throw std::logic_error("coset form inconsistent with anchor norm");
    if (P < 0) return;
    st.partial[kDim] = st.t * p0;
    recurse(st, kDim - 1, checked::mul(Lambda, P), visit);
  }

  template <class Visit>
  void recurse(Run& st, int i, i128 rem, Visit& visit) const {
    const i128 sigma = st.cs[i][i + 1];
    const i128 Di = N[i][i];
    const i128 base = checked::sub(checked::mul(Di, st.A[i]), sigma);  // u_i = Di delta z_i - base
    const i128 step = checked::mul(Di, st.delta);
    if (i == 0) {
      const i128 v = floor_div(rem, omega[0]);
      if (v * omega[0] != rem) return;
      const i128 r = isqrt128(v);
      if (r * r != v) return;
      for (i128 u : {r, -r}) {
        const i128 num = checked::add(u, base);
        const i128 z = floor_div(num, step);
        if (z * step == num) {
          check_bound(z, "coordinate");
          emit(st, z, visit);
        }
        if (r == 0) break;
      }
      return;
    }
    const i128 r = isqrt128(floor_div(rem, omega[i]));
    check_bound(r, "radius");
    const i128 lo = ceil_div(checked::sub(base, r), step);
    const i128 hi = floor_div(checked::add(base, r), step);
    check_bound(lo, "coordinate");
    check_bound(hi, "coordinate");
    for (i128 z = lo; z <= hi; ++z) {
      const i128 u = checked::sub(checked::mul(step, z), base);
      const i128 used = checked::mul(checked::mul(u, u), omega[i]);
      if (used > rem) continue;
      st.y[i] = checked::sub(checked::mul(st.delta, z), st.A[i]);
      for (int k = 0; k < i; ++k) st.cs[k][i] = checked::add(st.cs[k][i + 1], checked::mul(N[k][i], st.y[i]));
      st.partial[i] = st.partial[i + 1] + checked::narrow(z) * K[i];
      recurse(st, i - 1, rem - used, visit);
    }
  }

  template <class Visit>
  void emit(Run& st, i128 z0, Visit& visit) const {
    const LatticeClass x = st.partial[1] + checked::narrow(z0) * K[0];
    if (dot(w, x) != st.c || lattice.norm(x) != st.s)
      throw std::logic_error("enumerator produced a vector violating the query: " + x.str());
    visit(x);
  }
};

CosetEnumerator::CosetEnumerator(const EnriquesLattice& lattice, const LatticeClass& anchor)
    : impl_(std::make_unique<Impl>(lattice, anchor)) {}
CosetEnumerator::~CosetEnumerator() = default;
CosetEnumerator::CosetEnumerator(CosetEnumerator&&) noexcept = default;
CosetEnumerator& CosetEnumerator::operator=(CosetEnumerator&&) noexcept = default;

const LatticeClass& CosetEnumerator::anchor() const { return impl_->L; }
std::int64_t CosetEnumerator::anchor_norm() const { return impl_->n; }

void CosetEnumerator::for_each(std::int64_t s, std::int64_t c,
                               const std::function<void(const LatticeClass&)>& visit) const {
  impl_->run(s, c, visit);
}

EnumResult CosetEnumerator::enumerate(std::int64_t s, std::int64_t c, bool primitive_only,
                                      bool effective_only) const {
  EnumResult res;
  const auto& lat = impl_->lattice;
  impl_->run(s, c, [&](const LatticeClass& x) {
    if (primitive_only && x.content() != 1) return;
    if (effective_only && !lat.is_num_effective(x)) return;
    res.solutions.push_back(x);
  });
  sort_unique(res.solutions);
  return res;
}

std::uint64_t CosetEnumerator::count(std::int64_t s, std::int64_t c) const {
  std::uint64_t k = 0;
  impl_->run(s, c, [&](const LatticeClass&) { ++k; });
  return k;
}

EnumResult enumerate(const EnriquesLattice& lattice, const EnumQuery& q) {
  CosetEnumerator e(lattice, q.anchor);
  return e.enumerate(q.target_norm, q.target_pairing, q.primitive_only, q.effective_only);
}

IsotropicWitness min_pairing_isotropic(const EnriquesLattice& lattice, const LatticeClass& L) {
  const std::int64_t n = lattice.norm(L);
  if (n <= 0 || !lattice.is_num_effective(L))
    throw InvalidInput("phi needs an effective class of positive square, got " + L.str());
  CosetEnumerator e(lattice, L);
  const auto cmax = static_cast<std::int64_t>(isqrt128(n));
  for (std::int64_t c = 1; c <= cmax; ++c) {
    auto r = e.enumerate(0, c, true, true);
    if (!r.solutions.empty()) return {r.solutions.front(), c};
  }
  throw TheoremViolation("no isotropic class F with (F.L)^2 <= L^2 for " + L.str());
}

}  // namespace enriques
