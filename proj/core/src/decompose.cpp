#include "enriques/decompose.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "enriques/invariants.hpp"
#include "enriques/isotropic_enum.hpp"

namespace enriques {

namespace {

bool is_good_isotropic(const EnriquesLattice& lat, const LatticeClass& x) {
  return !x.is_zero() && lat.norm(x) == 0 && lat.is_num_effective(x) && lat.is_primitive(x);
}

void fail(std::string* why, std::string msg) {
  if (why) *why = std::move(msg);
}

void validate(const GramPattern& p) {
  const std::size_t n = p.size();
  if (n == 0) throw InvalidPattern("empty pattern");
  if (p.gram.size() != n) throw InvalidPattern("gram size does not match coefficient count");
  for (std::size_t i = 0; i < n; ++i) {
    if (p.coefficients[i] <= 0) throw InvalidPattern("coefficients must be positive");
    if (p.gram[i].size() != n) throw InvalidPattern("gram matrix is not square");
    if (p.gram[i][i] != 0) throw InvalidPattern("gram diagonal must be zero");
    for (std::size_t j = 0; j < n; ++j) {
      if (p.gram[i][j] < 0) throw InvalidPattern("gram entries must be nonnegative");
      if (p.gram[i][j] != p.gram[j][i]) throw InvalidPattern("gram matrix is not symmetric");
    }
  }
}

// Candidate lists keyed by the forced pairing with L; shared between the
// searches run for one L.
class SlotSearch {
 public:
  SlotSearch(const EnriquesLattice& lat, const LatticeClass& L)
      : lat_(lat), L_(L), n_(lat.norm(L)), ample_(lat.reference_ample()) {
    if (n_ > 0) enumerator_.emplace(lat, L);
  }

  std::optional<PatternMatch> run(const GramPattern& p, std::int64_t budget) {
    validate(p);
    const std::size_t k = p.size();
    i128 total = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        total = checked::add(total, checked::mul(checked::mul(i128{p.coefficients[i]}, i128{p.coefficients[j]}),
                                                 i128{p.gram[i][j]}));
    if (total != n_) return std::nullopt;

    if (n_ == 0) {
      // every slot is the primitive part of L
      const std::int64_t g = L_.content();
      const std::int64_t sum = std::accumulate(p.coefficients.begin(), p.coefficients.end(), std::int64_t{0});
      if (g % sum != 0) return std::nullopt;
      const LatticeClass P = L_.divided_by(g);
      if (!is_good_isotropic(lat_, P)) return std::nullopt;
      return PatternMatch{p.coefficients, std::vector<LatticeClass>(k, P)};
    }

    pairings_.assign(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < k; ++j) s = checked::add(s, checked::mul(p.coefficients[j], p.gram[i][j]));
      if (s <= 0 || s > budget) return std::nullopt;
      pairings_[i] = s;
    }
    p_ = &p;
    chosen_.assign(k, LatticeClass{});
    rest_ = L_;
    if (!recurse(0)) return std::nullopt;
    return PatternMatch{p.coefficients, chosen_};
  }

 private:
  const std::vector<LatticeClass>& candidates(std::int64_t c) {
    auto it = cache_.find(c);
    if (it != cache_.end()) return it->second;
    auto r = enumerator_->enumerate(0, c, true, true);
    return cache_.emplace(c, std::move(r.solutions)).first->second;
  }

  bool fits(std::size_t slot, const LatticeClass& x) const {
    for (std::size_t j = 0; j < slot; ++j)
      if (lat_.pairing(x, chosen_[j]) != p_->gram[slot][j]) return false;
    return true;
  }

  bool recurse(std::size_t slot) {
    const std::size_t k = p_->size();
    const std::int64_t a = p_->coefficients[slot];
    if (slot + 1 == k) {
      if (!rest_.divisible_by(a)) return false;
      LatticeClass x = rest_.divided_by(a);
      if (!is_good_isotropic(lat_, x) || lat_.pairing(x, L_) != pairings_[slot] || !fits(slot, x))
        return false;
      chosen_[slot] = x;
      return true;
    }
    std::int64_t later = 0;
    for (std::size_t j = slot + 1; j < k; ++j) later += p_->coefficients[j];
    for (const auto& x : candidates(pairings_[slot])) {
      if (!fits(slot, x)) continue;
      LatticeClass next = rest_ - a * x;
      // what remains is a positive combination of effective classes
      if (lat_.pairing(next, ample_) < later) continue;
      const LatticeClass saved = rest_;
      rest_ = next;
      chosen_[slot] = x;
      if (recurse(slot + 1)) return true;
      rest_ = saved;
    }
    return false;
  }

  const EnriquesLattice& lat_;
  LatticeClass L_;
  std::int64_t n_;
  LatticeClass ample_;
  std::optional<CosetEnumerator> enumerator_;
  std::map<std::int64_t, std::vector<LatticeClass>> cache_;

  const GramPattern* p_ = nullptr;
  std::vector<std::int64_t> pairings_;
  std::vector<LatticeClass> chosen_;
  LatticeClass rest_;
};

std::int64_t default_budget(const EnriquesLattice& lat, const LatticeClass& L) {
  return std::max<std::int64_t>(lat.norm(L), 1);
}

// Slot order inside each shape: the distinguished slots first, then the rest
// sorted by (coefficient, class).
void canonicalize(Decomposition& d) {
  std::vector<std::pair<std::int64_t, LatticeClass>> items;
  for (std::size_t i = 0; i < d.classes.size(); ++i) items.emplace_back(d.coefficients[i], d.classes[i]);
  auto sort_range = [&](std::size_t b, std::size_t e) {
    if (b < e && e <= items.size()) std::sort(items.begin() + b, items.begin() + e);
  };
  switch (d.pattern) {
    case Pattern::AllOnes: sort_range(0, items.size()); break;
    case Pattern::OneDouble:
      sort_range(0, 2);
      sort_range(2, items.size());
      break;
    case Pattern::TwoDoubles:
      sort_range(1, 3);
      sort_range(3, items.size());
      break;
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    d.coefficients[i] = items[i].first;
    d.classes[i] = items[i].second;
  }
}

std::optional<Decomposition> greedy(const EnriquesLattice& lat, const LatticeClass& L) {
  const std::int64_t n = lat.norm(L);
  if (n < 0 || !lat.is_num_effective(L)) return std::nullopt;
  if (n == 0) {
    const std::int64_t g = L.content();
    return Decomposition{{g}, {L.divided_by(g)}, Pattern::AllOnes};
  }
  const IsotropicWitness w = min_pairing_isotropic(lat, L);
  const LatticeClass& F = w.cls;
  if (n == w.value * w.value) {
    if (w.value % 2 != 0) return std::nullopt;
    const std::int64_t h = w.value / 2;
    if (!L.divisible_by(h)) return std::nullopt;
    return Decomposition{{h, h}, {F, L.divided_by(h) - F}, Pattern::OneDouble};
  }
  auto sub = greedy(lat, L - F);
  if (!sub) return std::nullopt;
  Decomposition d = std::move(*sub);

  for (std::size_t i = 0; i < d.classes.size(); ++i) {
    if (d.classes[i] == F) {
      d.coefficients[i] += 1;
      return d;
    }
  }
  std::vector<std::int64_t> q;
  for (const auto& E : d.classes) q.push_back(lat.pairing(F, E));
  if (std::any_of(q.begin(), q.end(), [](std::int64_t v) { return v <= 0; })) return std::nullopt;
  std::vector<std::size_t> twos;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] == 2) twos.push_back(i);
    else if (q[i] != 1) return std::nullopt;
  }
  if (d.classes.size() >= 10) return std::nullopt;

  if (twos.empty()) {
    d.coefficients.push_back(1);
    d.classes.push_back(F);
    return d;
  }
  if (twos.size() != 1) return std::nullopt;
  const std::size_t t = twos[0];
  auto move_front = [&](std::size_t from, std::size_t to) {
    std::rotate(d.classes.begin() + to, d.classes.begin() + from, d.classes.begin() + from + 1);
    std::rotate(d.coefficients.begin() + to, d.coefficients.begin() + from, d.coefficients.begin() + from + 1);
  };
  switch (d.pattern) {
    case Pattern::AllOnes:
      move_front(t, 0);
      d.classes.insert(d.classes.begin(), F);
      d.coefficients.insert(d.coefficients.begin(), 1);
      d.pattern = Pattern::OneDouble;
      return d;
    case Pattern::OneDouble:
      if (t > 1) return std::nullopt;
      if (t == 1) {
        std::swap(d.classes[0], d.classes[1]);
        std::swap(d.coefficients[0], d.coefficients[1]);
      }
      d.classes.insert(d.classes.begin() + 2, F);
      d.coefficients.insert(d.coefficients.begin() + 2, 1);
      d.pattern = Pattern::TwoDoubles;
      return d;
    case Pattern::TwoDoubles: return std::nullopt;
  }
  return std::nullopt;
}

// Coefficient vectors of a shape, one representative per symmetry class,
// whose quadratic value is L^2 and whose forced pairings are all >= phi.
void shape_vectors(Pattern pat, std::size_t k, std::int64_t n, std::int64_t phi,
                   const std::function<bool(const std::vector<std::int64_t>&)>& visit) {
  const std::int64_t cap = phi > 0 ? n / phi : n;
  std::vector<std::int64_t> a(k, 0);
  // free slots start after the distinguished ones
  const std::size_t tail = pat == Pattern::AllOnes ? 0 : pat == Pattern::OneDouble ? 2 : 3;
  bool stop = false;
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t used) {
    if (stop) return;
    if (i == k) {
      const GramPattern g = GramPattern::shape(pat, a);
      i128 q = 0;
      for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = 0; y < k; ++y) q += i128{a[x]} * a[y] * g.gram[x][y];
      if (q != n) return;
      for (std::size_t x = 0; x < k; ++x) {
        std::int64_t s = 0;
        for (std::size_t y = 0; y < k; ++y) s += a[y] * g.gram[x][y];
        if (s < phi) return;
      }
      if (visit(a)) stop = true;
      return;
    }
    std::int64_t hi = cap - used - static_cast<std::int64_t>(k - i - 1);
    // symmetric slots are nonincreasing
    bool bounded = false;
    if (i > tail) bounded = true;
    if (pat == Pattern::OneDouble && i == 1) bounded = true;
    if (pat == Pattern::TwoDoubles && i == 2) bounded = true;
    if (bounded) hi = std::min(hi, a[i - 1]);
    for (std::int64_t v = hi; v >= 1; --v) {
      a[i] = v;
      rec(i + 1, used + v);
      if (stop) return;
    }
  };
  rec(0, 0);
}

std::optional<Decomposition> fallback(const EnriquesLattice& lat, const LatticeClass& L) {
  const std::int64_t n = lat.norm(L);
  if (n == 0) return greedy(lat, L);
  SlotSearch search(lat, L);
  const std::int64_t phi = min_pairing_isotropic(lat, L).value;
  const std::int64_t budget = default_budget(lat, L);
  std::optional<Decomposition> out;
  for (Pattern pat : {Pattern::AllOnes, Pattern::OneDouble, Pattern::TwoDoubles}) {
    const std::size_t first = pat == Pattern::AllOnes ? 1 : pat == Pattern::OneDouble ? 2 : 3;
    for (std::size_t k = first; k <= 10 && !out; ++k) {
      shape_vectors(pat, k, n, phi, [&](const std::vector<std::int64_t>& a) {
        auto m = search.run(GramPattern::shape(pat, a), budget);
        if (!m) return false;
        out = Decomposition{m->coefficients, m->classes, pat};
        return true;
      });
    }
    if (out) break;
  }
  return out;
}

bool same_class_list(const std::vector<LatticeClass>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] == v[j]) return true;
  return false;
}

}  // namespace

GramPattern GramPattern::shape(Pattern p, std::vector<std::int64_t> coefficients) {
  const std::size_t k = coefficients.size();
  GramPattern g{std::move(coefficients), std::vector<std::vector<std::int64_t>>(k, std::vector<std::int64_t>(k, 1))};
  for (std::size_t i = 0; i < k; ++i) g.gram[i][i] = 0;
  auto set = [&](std::size_t i, std::size_t j) {
    if (i < k && j < k) g.gram[i][j] = g.gram[j][i] = 2;
  };
  if (p == Pattern::OneDouble || p == Pattern::TwoDoubles) set(0, 1);
  if (p == Pattern::TwoDoubles) set(0, 2);
  return g;
}

const char* to_string(Pattern p) {
  switch (p) {
    case Pattern::AllOnes: return "AllOnes";
    case Pattern::OneDouble: return "OneDouble";
    case Pattern::TwoDoubles: return "TwoDoubles";
  }
  return "?";
}

const char* to_string(ExtremalTag t) {
  switch (t) {
    case ExtremalTag::I: return "i";
    case ExtremalTag::IIa: return "ii_a";
    case ExtremalTag::IIb: return "ii_b";
    case ExtremalTag::IIc: return "ii_c";
  }
  return "?";
}

Pattern pattern_from_string(const std::string& s) {
  for (auto p : {Pattern::AllOnes, Pattern::OneDouble, Pattern::TwoDoubles})
    if (s == to_string(p)) return p;
  throw InvalidInput("unknown pattern '" + s + "'");
}

ExtremalTag extremal_tag_from_string(const std::string& s) {
  for (auto t : {ExtremalTag::I, ExtremalTag::IIa, ExtremalTag::IIb, ExtremalTag::IIc})
    if (s == to_string(t)) return t;
  throw InvalidInput("unknown extremal case '" + s + "'");
}

std::optional<PatternMatch> search_pattern(const EnriquesLattice& lattice, const LatticeClass& L,
                                           const GramPattern& p, std::optional<std::int64_t> budget) {
  validate(p);
  if (lattice.norm(L) < 0 || !lattice.is_num_effective(L))
    throw InvalidInput("search_pattern expects an effective class, got " + L.str());
  SlotSearch search(lattice, L);
  return search.run(p, budget.value_or(default_budget(lattice, L)));
}

bool verify_match(const EnriquesLattice& lattice, const LatticeClass& L, const GramPattern& p,
                  const PatternMatch& m, std::string* why) {
  if (m.classes.size() != p.size() || m.coefficients != p.coefficients) {
    fail(why, "match does not have the pattern's shape");
    return false;
  }
  LatticeClass sum;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!is_good_isotropic(lattice, m.classes[i])) {
      fail(why, "class " + m.classes[i].str() + " is not primitive effective isotropic");
      return false;
    }
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (lattice.pairing(m.classes[i], m.classes[j]) != p.gram[i][j]) {
        fail(why, "pairing mismatch at slots " + std::to_string(i) + "," + std::to_string(j));
        return false;
      }
    sum += p.coefficients[i] * m.classes[i];
  }
  if (sum != L) {
    fail(why, "recomposition gives " + sum.str());
    return false;
  }
  return true;
}

bool verify_decomposition(const EnriquesLattice& lattice, const LatticeClass& L, const Decomposition& d,
                          std::string* why) {
  const std::size_t k = d.classes.size();
  if (k == 0 || k > 10 || d.coefficients.size() != k) {
    fail(why, "decomposition has " + std::to_string(k) + " summands");
    return false;
  }
  if ((d.pattern == Pattern::OneDouble && k < 2) || (d.pattern == Pattern::TwoDoubles && k < 3)) {
    fail(why, "too few summands for the pattern");
    return false;
  }
  for (auto a : d.coefficients)
    if (a <= 0) {
      fail(why, "nonpositive coefficient");
      return false;
    }
  if (same_class_list(d.classes)) {
    fail(why, "repeated class");
    return false;
  }
  return verify_match(lattice, L, GramPattern::shape(d.pattern, d.coefficients),
                      PatternMatch{d.coefficients, d.classes}, why);
}

Decomposition isotropic_decompose(const EnriquesLattice& lattice, const LatticeClass& L) {
  if (lattice.norm(L) < 0 || !lattice.is_num_effective(L))
    throw InvalidInput("isotropic_decompose expects an effective class with L^2 >= 0, got " + L.str());
  if (auto d = greedy(lattice, L)) {
    canonicalize(*d);
    if (verify_decomposition(lattice, L, *d)) return *d;
  }
  if (auto d = shape_search_decompose(lattice, L)) {
    canonicalize(*d);
    std::string why;
    if (!verify_decomposition(lattice, L, *d, &why))
      throw DecompositionNotFound("fallback produced an invalid decomposition: " + why);
    return *d;
  }
  throw DecompositionNotFound("no isotropic decomposition found for " + L.str());
}

std::optional<Decomposition> shape_search_decompose(const EnriquesLattice& lattice, const LatticeClass& L) {
  if (lattice.norm(L) < 0 || !lattice.is_num_effective(L))
    throw InvalidInput("expected an effective class with L^2 >= 0, got " + L.str());
  auto d = fallback(lattice, L);
  if (d) canonicalize(*d);
  return d;
}

bool verify_frame(const EnriquesLattice& lattice, const LatticeClass& D, const IsotropicFrame& f,
                  std::string* why) {
  LatticeClass sum;
  for (std::size_t i = 0; i < f.classes.size(); ++i) {
    if (!is_good_isotropic(lattice, f.classes[i])) {
      fail(why, "class " + f.classes[i].str() + " is not primitive effective isotropic");
      return false;
    }
    for (std::size_t j = i + 1; j < f.classes.size(); ++j)
      if (lattice.pairing(f.classes[i], f.classes[j]) != 1) {
        fail(why, "frame classes " + std::to_string(i) + "," + std::to_string(j) + " do not pair to 1");
        return false;
      }
    sum += f.classes[i];
  }
  if (sum != 3 * D) {
    fail(why, "frame sum " + sum.str() + " differs from 3D");
    return false;
  }
  return true;
}

IsotropicFrame ten_frame(const EnriquesLattice& lattice, const LatticeClass& D) {
  if (lattice.norm(D) != 10 || !lattice.is_num_effective(D))
    throw InvalidInput("ten_frame expects an effective D with D^2 = 10, got " + D.str());
  const auto w = min_pairing_isotropic(lattice, D);
  if (w.value != 3) throw InvalidInput("ten_frame expects phi(D) = 3, got " + std::to_string(w.value));
  const auto sols = CosetEnumerator(lattice, D).enumerate(0, 3, true, true).solutions;
  if (sols.size() != 10)
    throw TheoremViolation("expected exactly 10 isotropic classes with F.D = 3, found " +
                           std::to_string(sols.size()));
  IsotropicFrame f;
  std::copy(sols.begin(), sols.end(), f.classes.begin());
  std::string why;
  if (!verify_frame(lattice, D, f, &why)) throw TheoremViolation("frame check failed: " + why);
  return f;
}

bool verify_extremal(const EnriquesLattice& lattice, const LatticeClass& L, const ExtremalCase& x,
                     std::string* why) {
  if (x.h <= 0) {
    fail(why, "h must be positive");
    return false;
  }
  const bool three = x.tag != ExtremalTag::I;
  if (three != x.E3.has_value()) {
    fail(why, "E3 presence does not match the case");
    return false;
  }
  std::vector<LatticeClass> cls{x.E1, x.E2};
  if (three) cls.push_back(*x.E3);
  for (const auto& c : cls)
    if (!is_good_isotropic(lattice, c)) {
      fail(why, "class " + c.str() + " is not primitive effective isotropic");
      return false;
    }
  if (lattice.pairing(x.E1, x.E2) != 2 ||
      (three && (lattice.pairing(x.E1, *x.E3) != 2 || lattice.pairing(x.E2, *x.E3) != 1))) {
    fail(why, "witness pairings are not (2,2,1)");
    return false;
  }
  LatticeClass sum;
  switch (x.tag) {
    case ExtremalTag::I: sum = x.h * (x.E1 + x.E2); break;
    case ExtremalTag::IIa: sum = x.h * (x.E1 + x.E2) + *x.E3; break;
    case ExtremalTag::IIb: sum = (x.h + 1) * x.E1 + x.h * x.E2 + *x.E3; break;
    case ExtremalTag::IIc:
      if (x.h != 2) {
        fail(why, "case ii_c has h = 2");
        return false;
      }
      sum = 2 * (x.E1 + x.E2 + *x.E3);
      break;
  }
  if (sum != L) {
    fail(why, "recomposition gives " + sum.str());
    return false;
  }
  return true;
}

ExtremalCase extremal_decompose(const EnriquesLattice& lattice, const LatticeClass& L) {
  const std::int64_t n = lattice.norm(L);
  if (n <= 0 || !lattice.is_num_effective(L))
    throw InvalidInput("extremal_decompose expects an effective class of positive square, got " + L.str());
  const auto w = min_pairing_isotropic(lattice, L);
  const std::int64_t phi = w.value;
  const std::int64_t top = phi * phi + phi - 2;
  if (n > top)
    throw InvalidInput("L^2 = " + std::to_string(n) + " exceeds phi^2 + phi - 2 = " + std::to_string(top));
  if (n < phi * phi || (n > phi * phi && n < top))
    throw TheoremViolation("L^2 = " + std::to_string(n) + " lies in the forbidden range for phi = " +
                           std::to_string(phi));

  SlotSearch search(lattice, L);
  const std::int64_t budget = default_budget(lattice, L);
  auto from_match = [&](ExtremalTag tag, std::int64_t h, const PatternMatch& m) {
    ExtremalCase x{tag, h, m.classes[0], m.classes[1], std::nullopt};
    if (m.classes.size() > 2) x.E3 = m.classes[2];
    return x;
  };
  auto finish = [&](const ExtremalCase& x) {
    std::string why;
    if (!verify_extremal(lattice, L, x, &why)) throw TheoremViolation("extremal witness check failed: " + why);
    return x;
  };

  if (n == phi * phi) {
    if (phi % 2 != 0) throw TheoremViolation("L^2 = phi^2 with phi odd");
    const std::int64_t h = phi / 2;
    if (L.divisible_by(h)) {
      ExtremalCase x{ExtremalTag::I, h, w.cls, L.divided_by(h) - w.cls, std::nullopt};
      if (verify_extremal(lattice, L, x)) return x;
    }
    if (auto m = search.run(GramPattern::shape(Pattern::OneDouble, {h, h}), budget))
      return finish(from_match(ExtremalTag::I, h, *m));
    throw TheoremViolation("no witnesses h(E1+E2) for " + L.str());
  }

  if (phi % 2 == 1) {
    const std::int64_t h = (phi - 1) / 2;
    if (auto m = search.run(GramPattern::shape(Pattern::TwoDoubles, {h, h, 1}), budget))
      return finish(from_match(ExtremalTag::IIa, h, *m));
  } else {
    const std::int64_t h = (phi - 2) / 2;
    if (auto m = search.run(GramPattern::shape(Pattern::TwoDoubles, {h + 1, h, 1}), budget))
      return finish(from_match(ExtremalTag::IIb, h, *m));
    if (n == 40 && phi == 6)
      if (auto m = search.run(GramPattern::shape(Pattern::TwoDoubles, {2, 2, 2}), budget))
        return finish(from_match(ExtremalTag::IIc, 2, *m));
  }
  throw TheoremViolation("no extremal witnesses found for " + L.str());
}

}  // namespace enriques
