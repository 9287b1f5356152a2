#include "enriques/expression.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "enriques/isotropic_enum.hpp"

namespace enriques {

namespace {

// Positive inertia of a symmetric integer matrix by congruence.
std::size_t positive_inertia(const std::vector<std::vector<std::int64_t>>& g) {
  using Q = boost::multiprecision::cpp_rational;
  const std::size_t n = g.size();
  std::vector<std::vector<Q>> a(n, std::vector<Q>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = g[i][j];
  std::size_t pos = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][p] == 0) ++p;
    if (p == n) {
      // zero diagonal: add a row/column with a nonzero off-diagonal entry
      std::size_t q = n;
      for (std::size_t i = k; i < n && q == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a[i][j] != 0) {
            p = i;
            q = j;
            break;
          }
      if (q == n) break;
      for (std::size_t l = 0; l < n; ++l) a[p][l] += a[q][l];
      for (std::size_t l = 0; l < n; ++l) a[l][p] += a[l][q];
    }
    std::swap(a[k], a[p]);
    for (auto& row : a) std::swap(row[k], row[p]);
    if (a[k][k] > 0) ++pos;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Q f = a[i][k] / a[k][k];
      if (f == 0) continue;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
    for (std::size_t i = k + 1; i < n; ++i) a[k][i] = 0;
  }
  return pos;
}

class Realizer {
 public:
  Realizer(const EnriquesLattice& lat, std::vector<std::vector<std::int64_t>> gram)
      : lat_(lat), g_(std::move(gram)), chosen_(g_.size()) {}

  std::vector<LatticeClass> run() {
    const std::size_t m = g_.size();
    const LatticeClass& R = lat_.reference_ample();
    CosetEnumerator ample(lat_, R);
    constexpr std::int64_t kFirstLimit = 64;
    for (std::int64_t c = 1; c <= kFirstLimit && chosen_[0].is_zero(); ++c) {
      auto sols = ample.enumerate(0, c, true, true).solutions;
      if (!sols.empty()) chosen_[0] = sols.front();
    }
    if (chosen_[0].is_zero()) throw UnsatisfiablePairingSpec("lattice has no effective isotropic class");
    if (m == 1) return chosen_;

    // Up to isometries fixing the first class the second one can be moved
    // close to it, which bounds its degree against the reference class.
    const std::int64_t g = g_[0][1];
    const std::int64_t top = lat_.pairing(R, chosen_[0]) * g + g / 2 + 1;
    for (std::int64_t c = 1; c <= top; ++c) {
      std::vector<LatticeClass> level;
      ample.for_each(0, c, [&](const LatticeClass& x) {
        if (lat_.pairing(x, chosen_[0]) == g && lat_.is_num_effective(x) && lat_.is_primitive(x))
          level.push_back(x);
      });
      sort_unique(level);
      for (const auto& x : level) {
        chosen_[1] = x;
        if (m == 2) return chosen_;
        inner_.reset();
        cache_.clear();
        if (extend(2)) return chosen_;
      }
    }
    throw UnsatisfiablePairingSpec("no effective isotropic classes realize the requested pairings");
  }

 private:
  bool extend(std::size_t slot) {
    if (slot == g_.size()) return true;
    if (!inner_) inner_.emplace(lat_, chosen_[0] + chosen_[1]);
    const std::int64_t c = g_[0][slot] + g_[1][slot];
    auto it = cache_.find(c);
    if (it == cache_.end()) it = cache_.emplace(c, inner_->enumerate(0, c, true, true).solutions).first;
    for (const auto& x : it->second) {
      bool ok = true;
      for (std::size_t j = 0; j < slot && ok; ++j) ok = lat_.pairing(x, chosen_[j]) == g_[slot][j];
      if (!ok) continue;
      chosen_[slot] = x;
      if (extend(slot + 1)) return true;
    }
    return false;
  }

  const EnriquesLattice& lat_;
  std::vector<std::vector<std::int64_t>> g_;
  std::vector<LatticeClass> chosen_;
  std::optional<CosetEnumerator> inner_;
  std::map<std::int64_t, std::vector<LatticeClass>> cache_;
};

class Parser {
 public:
  Parser(const std::string& text, Bindings env, const EnriquesLattice& lat)
      : s_(text), env_(std::move(env)), lat_(lat) {}

  ClassExpression run() {
    skip();
    if (pos_ >= s_.size()) error("expected an expression");
    while (peek_word("let")) {
      let_statement();
      expect(';');
    }
    LatticeClass x = expr();
    skip();
    if (pos_ < s_.size()) error("expected '+', '-' or end of input");
    return ClassExpression{s_, x, env_};
  }

 private:
  [[noreturn]] void error(const std::string& what) const { throw SyntaxError(pos_, what); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) error(std::string("expected '") + c + "'");
    ++pos_;
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  bool peek_word(const char* w) {
    skip();
    const std::size_t n = std::char_traits<char>::length(w);
    if (s_.compare(pos_, n, w) != 0) return false;
    return pos_ + n >= s_.size() || !ident_char(s_[pos_ + n]);
  }

  bool at_literal() {
    skip();
    std::size_t p = pos_;
    if (p >= s_.size() || s_[p] != 'v') return false;
    ++p;
    while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
    return p < s_.size() && s_[p] == '[';
  }

  std::string ident() {
    skip();
    if (pos_ >= s_.size() || !ident_start(s_[pos_])) error("expected an identifier");
    const std::size_t b = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    return s_.substr(b, pos_ - b);
  }

  bool at_int() {
    skip();
    std::size_t p = pos_;
    if (p < s_.size() && s_[p] == '-') ++p;
    return p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]));
  }

  std::int64_t integer() {
    skip();
    const std::size_t b = pos_;
    bool neg = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      pos_ = b;
      error("expected an integer");
    }
    i128 v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > (i128{1} << 63)) {
        pos_ = b;
        error("integer out of range");
      }
      ++pos_;
    }
    if (neg) v = -v;
    if (!fits64(v)) {
      pos_ = b;
      error("integer out of range");
    }
    return static_cast<std::int64_t>(v);
  }

  void let_statement() {
    pos_ += 3;
    std::vector<std::string> names{ident()};
    while (peek(',')) {
      ++pos_;
      names.push_back(ident());
    }
    expect('=');
    if (peek_word("isotropic")) {
      isotropic_call(names);
      return;
    }
    if (names.size() != 1) error("only isotropic(...) binds several names");
    env_[names[0]] = expr();
  }

  void isotropic_call(const std::vector<std::string>& names) {
    pos_ += 9;
    expect('(');
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (!index.emplace(names[i], i).second) error("name '" + names[i] + "' declared twice");
    PairingSpec spec;
    if (!peek(')')) {
      while (true) {
        const std::size_t at = pos_;
        std::string a = ident();
        expect('.');
        std::string b = ident();
        expect('=');
        const std::int64_t v = integer();
        for (const auto& n : {a, b})
          if (!index.count(n)) throw UnboundName("'" + n + "' in a pairing is not declared by this let");
        auto key = std::minmax(a, b);
        auto [it, fresh] = spec.emplace(std::pair<std::string, std::string>(key.first, key.second), v);
        if (!fresh && it->second != v) {
          pos_ = at;
          error("conflicting pairings for " + a + "." + b);
        }
        if (!peek(',')) break;
        ++pos_;
      }
    }
    expect(')');
    auto classes = realize_isotropic(lat_, names, spec);
    for (std::size_t i = 0; i < names.size(); ++i) env_[names[i]] = classes[i];
  }

  LatticeClass expr() {
    LatticeClass acc;
    bool negate = false;
    if (peek('-')) {
      ++pos_;
      negate = true;
    }
    acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  LatticeClass term() {
    if (at_int()) {
      const std::int64_t k = integer();
      expect('*');
      LatticeClass a = atom();
      LatticeClass out;
      for (std::size_t i = 0; i < kRank; ++i) out[i] = checked::mul(k, a[i]);
      return out;
    }
    return atom();
  }

  LatticeClass atom() {
    skip();
    if (pos_ >= s_.size()) error("expected 'v[', a name or '('");
    if (peek('(')) {
      ++pos_;
      LatticeClass x = expr();
      expect(')');
      return x;
    }
    if (at_literal()) {
      ++pos_;
      expect('[');
      LatticeClass::Coords c{};
      for (std::size_t i = 0; i < kRank; ++i) {
        if (i > 0) expect(',');
        c[i] = integer();
      }
      expect(']');
      return LatticeClass(c);
    }
    if (!ident_start(s_[pos_])) error("expected 'v[', a name or '('");
    const std::size_t at = pos_;
    std::string name = ident();
    auto it = env_.find(name);
    if (it == env_.end()) throw UnboundName("unbound name '" + name + "' at position " + std::to_string(at));
    return it->second;
  }

  std::string s_;
  std::size_t pos_ = 0;
  Bindings env_;
  const EnriquesLattice& lat_;
};

}  // namespace

std::vector<LatticeClass> realize_isotropic(const EnriquesLattice& lattice, const std::vector<std::string>& names,
                                            const PairingSpec& pairs) {
  const std::size_t k = names.size();
  if (k == 0) throw InvalidInput("no names to realize");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < k; ++i)
    if (!index.emplace(names[i], i).second) throw InvalidInput("duplicate name '" + names[i] + "'");

  std::vector<std::vector<std::int64_t>> g(k, std::vector<std::int64_t>(k, -1));
  for (std::size_t i = 0; i < k; ++i) g[i][i] = 0;
  for (const auto& [key, v] : pairs) {
    auto a = index.find(key.first), b = index.find(key.second);
    if (a == index.end() || b == index.end())
      throw UnboundName("pairing mentions an undeclared name: " + key.first + "." + key.second);
    if (v < 0)
      throw UnsatisfiablePairingSpec("effective isotropic classes pair nonnegatively: " + key.first + "." +
                                     key.second + " = " + std::to_string(v));
    if (a->second == b->second && v != 0)
      throw UnsatisfiablePairingSpec("isotropic class " + key.first + " must have square 0");
    g[a->second][b->second] = g[b->second][a->second] = v;
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (g[i][j] < 0)
        throw UnsatisfiablePairingSpec("pairing " + names[i] + "." + names[j] + " is not specified");

  // pairing 0 between effective isotropic classes forces equality
  std::vector<std::size_t> rep(k);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < k; ++i) {
    rep[i] = reps.size();
    for (std::size_t j = 0; j < i; ++j)
      if (g[i][j] == 0) {
        rep[i] = rep[j];
        break;
      }
    if (rep[i] == reps.size()) reps.push_back(i);
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (rep[i] == rep[j])
        for (std::size_t l = 0; l < k; ++l)
          if (g[i][l] != g[j][l])
            throw UnsatisfiablePairingSpec(names[i] + " and " + names[j] + " pair to 0 but differ against " +
                                           names[l]);

  std::vector<std::vector<std::int64_t>> rg(reps.size(), std::vector<std::int64_t>(reps.size()));
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = 0; b < reps.size(); ++b) rg[a][b] = g[reps[a]][reps[b]];
  if (positive_inertia(rg) > 1)
    throw UnsatisfiablePairingSpec("requested pairings have more than one positive direction");
  auto classes = Realizer(lattice, rg).run();
  std::vector<LatticeClass> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = classes[rep[i]];
  return out;
}

ClassExpression parse_class(const std::string& text, const Bindings& env, const EnriquesLattice& lattice) {
  return Parser(text, env, lattice).run();
}

}  // namespace enriques
