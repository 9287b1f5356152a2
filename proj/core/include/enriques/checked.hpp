#pragma once

#include <cstdint>
#include <limits>
#include <numeric>

#include "enriques/errors.hpp"

namespace enriques {

using i128 = __int128;

/// Largest magnitude accepted for any bound certificate produced while
/// enumerating (coordinate ranges, squared radii numerators).
inline constexpr std::int64_t kBoundLimit = std::int64_t{1} << 40;

namespace checked {

[[noreturn, gnu::cold, gnu::noinline]] inline void overflow(const char* what) {
  throw OverflowError(what);
}

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) overflow("int64 addition overflow");
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) overflow("int64 subtraction overflow");
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) overflow("int64 multiplication overflow");
  return r;
}

inline i128 add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) overflow("int128 addition overflow");
  return r;
}

inline i128 sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) overflow("int128 subtraction overflow");
  return r;
}

inline i128 mul(i128 a, i128 b) {
  if (a == static_cast<std::int64_t>(a) && b == static_cast<std::int64_t>(b))
    return static_cast<i128>(static_cast<std::int64_t>(a)) * static_cast<std::int64_t>(b);
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) overflow("int128 multiplication overflow");
  return r;
}

inline std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    overflow("value does not fit in int64");
  return static_cast<std::int64_t>(v);
}

}  // namespace checked

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

inline i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline bool fits64(i128 v) { return v == static_cast<std::int64_t>(v); }

/// floor(a / b) for b != 0.
inline i128 floor_div(i128 a, i128 b) {
  if (fits64(a) && fits64(b)) {
    const auto x = static_cast<std::int64_t>(a), y = static_cast<std::int64_t>(b);
    std::int64_t q = x / y;
    if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
    return q;
  }
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

/// floor(sqrt(v)) for v >= 0.
inline i128 isqrt128(i128 v) {
  if (v < 0) throw InvalidInput("isqrt of a negative value");
  if (v < 2) return v;
  if (v < (i128{1} << 52)) {
    auto x = static_cast<std::int64_t>(__builtin_sqrt(static_cast<double>(v)));
    const auto u = static_cast<std::int64_t>(v);
    while (x * x > u) --x;
    while ((x + 1) * (x + 1) <= u) ++x;
    return x;
  }
  // Newton iteration from a power-of-two overestimate.
  int bits = 0;
  for (i128 t = v; t > 0; t >>= 1) ++bits;
  i128 x = i128{1} << ((bits + 1) / 2);
  while (true) {
    i128 y = (x + v / x) / 2;
    if (y >= x) break;
    x = y;
  }
  while (x * x > v) --x;
  while ((x + 1) * (x + 1) <= v) ++x;
  return x;
}

}  // namespace enriques
