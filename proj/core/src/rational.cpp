#include "enriques/rational.hpp"

#include <algorithm>

namespace enriques {

std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  // Work with the negative magnitude so INT128_MIN is representable.
  std::string out;
  i128 t = neg ? v : -v;
  while (t != 0) {
    out.push_back(static_cast<char>('0' - static_cast<int>(t % 10)));
    t /= 10;
  }
  if (neg) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

std::string Rational::str() const {
  if (den_ == 1) return to_string(num_);
  return to_string(num_) + "/" + to_string(den_);
}

}  // namespace enriques
