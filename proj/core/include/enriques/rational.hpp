#pragma once

#include <compare>
#include <string>

#include "enriques/checked.hpp"

namespace enriques {

/// Exact rational number over 128-bit integers, always kept in lowest terms
/// with a positive denominator. Every operation is overflow-checked.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(i128 num) : num_(num), den_(1) {}  // NOLINT: implicit from integers
  Rational(std::int64_t num) : num_(num), den_(1) {}  // NOLINT
  Rational(int num) : num_(num), den_(1) {}  // NOLINT
  Rational(i128 num, i128 den) : num_(num), den_(den) { normalize(); }

  i128 num() const { return num_; }
  i128 den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  i128 floor() const { return floor_div(num_, den_); }
  i128 ceil() const { return ceil_div(num_, den_); }
  /// Nearest integer, ties rounded up.
  i128 round() const { return floor_div(checked::add(checked::mul(num_, 2), den_), checked::mul(den_, 2)); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return Rational(checked::add(a.num_, b.num_), a.den_);
    i128 g = gcd128(a.den_, b.den_);
    i128 da = a.den_ / g;
    return Rational(checked::add(checked::mul(a.num_, b.den_ / g), checked::mul(b.num_, da)),
                    checked::mul(da, b.den_));
  }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.num_ = -a.num_;
    r.den_ = a.den_;
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    i128 g1 = gcd128(a.num_, b.den_);
    i128 g2 = gcd128(b.num_, a.den_);
    return Rational(checked::mul(a.num_ / g1, b.num_ / g2),
                    checked::mul(a.den_ / g2, b.den_ / g1));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw InvalidInput("rational division by zero");
    Rational inv;
    inv.num_ = b.num_ < 0 ? -b.den_ : b.den_;
    inv.den_ = b.num_ < 0 ? -b.num_ : b.num_;
    return a * inv;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    i128 l = checked::mul(a.num_, b.den_);
    i128 r = checked::mul(b.num_, a.den_);
    return l <=> r;
  }

  std::string str() const;

 private:
  void normalize() {
    if (den_ == 0) throw InvalidInput("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    i128 g = gcd128(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  i128 num_ = 0;
  i128 den_ = 1;
};

std::string to_string(i128 v);

/// floor(sqrt(q)) for a rational q >= 0.
inline i128 floor_sqrt(const Rational& q) {
  if (q.sign() < 0) throw InvalidInput("square root of a negative rational");
  return isqrt128(q.floor());
}

}  // namespace enriques
