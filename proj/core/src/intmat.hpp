#pragma once

// Small exact integer matrix helpers: integral LLL on a Gram matrix and
// fraction-free (Bareiss) elimination. Internal header.

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "enriques/checked.hpp"
#include "enriques/errors.hpp"

namespace enriques::detail {

template <class Int>
using Mat = std::vector<std::vector<Int>>;

using BigInt = boost::multiprecision::cpp_int;

inline i128 imul(i128 a, i128 b) { return checked::mul(a, b); }
inline i128 iadd(i128 a, i128 b) { return checked::add(a, b); }
inline i128 isub(i128 a, i128 b) { return checked::sub(a, b); }
inline i128 iabs(i128 a) { return abs128(a); }
inline i128 ifloordiv(i128 a, i128 b) { return floor_div(a, b); }

inline BigInt imul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt iadd(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt isub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt iabs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }
inline BigInt ifloordiv(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Integral LLL (delta = 3/4) on a positive definite Gram matrix. On return
/// `gram` is reduced and row k of `basis` holds the coefficients of the k-th
/// reduced vector in the input basis.
template <class Int>
void lll_gram(Mat<Int>& gram, Mat<Int>& basis) {
  const int n = static_cast<int>(gram.size());
  basis.assign(n, std::vector<Int>(n, Int(0)));
  for (int i = 0; i < n; ++i) basis[i][i] = Int(1);
  if (n <= 1) return;

  // 1-based b_k <-> gram index k-1
  std::vector<Int> d(n + 1, Int(0));
  Mat<Int> lam(n + 1, std::vector<Int>(n + 1, Int(0)));
  auto g = [&](int i, int j) -> Int& { return gram[i - 1][j - 1]; };

  auto redi = [&](int k, int l) {
    if (iabs(imul(Int(2), lam[k][l])) <= d[l]) return;
    const Int q = ifloordiv(iadd(imul(Int(2), lam[k][l]), d[l]), imul(Int(2), d[l]));
    const int K = k - 1, L = l - 1;
    for (int i = 0; i < n; ++i) basis[K][i] = isub(basis[K][i], imul(q, basis[L][i]));
    const Int gkk = iadd(isub(gram[K][K], imul(imul(Int(2), q), gram[K][L])),
                         imul(imul(q, q), gram[L][L]));
    for (int j = 0; j < n; ++j) {
      if (j == K) continue;
      gram[K][j] = isub(gram[K][j], imul(q, gram[L][j]));
      gram[j][K] = gram[K][j];
    }
    gram[K][K] = gkk;
    lam[k][l] = isub(lam[k][l], imul(q, d[l]));
    for (int i = 1; i < l; ++i) lam[k][i] = isub(lam[k][i], imul(q, lam[l][i]));
  };

  int kmax = 1;
  auto swapi = [&](int k) {
    std::swap(basis[k - 1], basis[k - 2]);
    std::swap(gram[k - 1], gram[k - 2]);
    for (auto& row : gram) std::swap(row[k - 1], row[k - 2]);
    for (int j = 1; j <= k - 2; ++j) std::swap(lam[k][j], lam[k - 1][j]);
    const Int l = lam[k][k - 1];
    const Int B = iadd(imul(d[k - 2], d[k]), imul(l, l)) / d[k - 1];
    for (int i = k + 1; i <= kmax; ++i) {
      const Int t = lam[i][k];
      lam[i][k] = isub(imul(d[k], lam[i][k - 1]), imul(l, t)) / d[k - 1];
      lam[i][k - 1] = iadd(imul(B, t), imul(l, lam[i][k])) / d[k];
    }
    d[k - 1] = B;
  };

  d[0] = Int(1);
  d[1] = g(1, 1);
  if (d[1] <= 0) throw InvalidInput("quadratic form is not positive definite");
  int k = 2;
  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (int j = 1; j <= k; ++j) {
        Int u = g(k, j);
        for (int i = 1; i < j; ++i) u = isub(imul(d[i], u), imul(lam[k][i], lam[j][i])) / d[i - 1];
        if (j < k) {
          lam[k][j] = u;
        } else {
          if (u <= 0) throw InvalidInput("quadratic form is not positive definite");
          d[k] = u;
        }
      }
    }
    while (true) {
      redi(k, k - 1);
      const Int lhs = imul(imul(Int(4), d[k]), d[k - 2]);
      const Int rhs = isub(imul(imul(Int(3), d[k - 1]), d[k - 1]),
                           imul(imul(Int(4), lam[k][k - 1]), lam[k][k - 1]));
      if (lhs < rhs) {
        swapi(k);
        k = std::max(2, k - 1);
      } else {
        break;
      }
    }
    for (int l = k - 2; l >= 1; --l) redi(k, l);
    ++k;
  }
}

/// Bareiss elimination of a symmetric matrix. Returns the upper triangle N
/// with N[i][i] the i-th leading principal minor; entries below the diagonal
/// are zeroed.
template <class Int>
Mat<Int> bareiss_upper(const Mat<Int>& q) {
  const int n = static_cast<int>(q.size());
  Mat<Int> m = q;
  Int prev(1);
  for (int k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) throw InvalidInput("zero leading minor in elimination");
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        m[i][j] = isub(imul(m[i][j], m[k][k]), imul(m[i][k], m[k][j])) / prev;
    }
    prev = m[k][k];
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) m[i][j] = Int(0);
  return m;
}

}  // namespace enriques::detail
