#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "diffhom/errors.hpp"
#include "diffhom/rational.hpp"
#include "diffhom/var.hpp"

namespace diffhom {

// A power product of variables, stored as sorted (variable, exponent) pairs
// with strictly positive exponents.
class Monomial {
 public:
  using Factor = std::pair<VarId, int>;

  Monomial() = default;
  explicit Monomial(VarId v, int e = 1) {
    if (e > 0) {
      factors_.emplace_back(v, e);
      degree_ = e;
    }
  }

  // Accepts factors in any order, possibly repeated or with zero exponents.
  static Monomial from_factors(std::vector<Factor> fs) {
    std::sort(fs.begin(), fs.end(),
              [](const Factor& a, const Factor& b) { return a.first < b.first; });
    Monomial m;
    for (const auto& [v, e] : fs) {
      if (e < 0) throw Error("negative exponent for " + to_string(v));
      if (e == 0) continue;
      if (!m.factors_.empty() && m.factors_.back().first == v)
        m.factors_.back().second += e;
      else
        m.factors_.emplace_back(v, e);
      m.degree_ += e;
    }
    return m;
  }

  const std::vector<Factor>& factors() const { return factors_; }
  int degree() const { return degree_; }
  bool is_one() const { return factors_.empty(); }

  int degree_in(VarId v) const {
    auto it = std::lower_bound(
        factors_.begin(), factors_.end(), v,
        [](const Factor& f, const VarId& x) { return f.first < x; });
    return (it != factors_.end() && it->first == v) ? it->second : 0;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto ia = a.factors_.begin(), ib = b.factors_.begin();
    while (ia != a.factors_.end() && ib != b.factors_.end()) {
      if (ia->first < ib->first) {
        r.factors_.push_back(*ia++);
      } else if (ib->first < ia->first) {
        r.factors_.push_back(*ib++);
      } else {
        r.factors_.emplace_back(ia->first, ia->second + ib->second);
        ++ia;
        ++ib;
      }
    }
    r.factors_.insert(r.factors_.end(), ia, a.factors_.end());
    r.factors_.insert(r.factors_.end(), ib, b.factors_.end());
    r.degree_ = a.degree_ + b.degree_;
    return r;
  }

  // a / b when b divides a.
  friend std::optional<Monomial> divide(const Monomial& a, const Monomial& b) {
    Monomial r;
    auto ia = a.factors_.begin();
    for (const auto& [v, e] : b.factors_) {
      while (ia != a.factors_.end() && ia->first < v) r.factors_.push_back(*ia++);
      if (ia == a.factors_.end() || ia->first != v || ia->second < e)
        return std::nullopt;
      if (ia->second > e) r.factors_.emplace_back(v, ia->second - e);
      ++ia;
    }
    r.factors_.insert(r.factors_.end(), ia, a.factors_.end());
    r.degree_ = a.degree_ - b.degree_;
    return r;
  }

  bool operator==(const Monomial& o) const { return factors_ == o.factors_; }

  // Graded lexicographic: higher total degree is larger; ties are broken by
  // the exponent of the earliest variable (in VarId order) where they differ.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
    auto ia = a.factors_.begin(), ib = b.factors_.begin();
    while (ia != a.factors_.end() && ib != b.factors_.end()) {
      if (ia->first != ib->first)
        return ia->first < ib->first ? std::strong_ordering::greater
                                     : std::strong_ordering::less;
      if (ia->second != ib->second) return ia->second <=> ib->second;
      ++ia;
      ++ib;
    }
    if (ia != a.factors_.end()) return std::strong_ordering::greater;
    if (ib != b.factors_.end()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
  }

 private:
  std::vector<Factor> factors_;
  int degree_ = 0;
};

inline std::string to_string(const Monomial& m) {
  if (m.is_one()) return "1";
  std::string s;
  for (const auto& [v, e] : m.factors()) {
    if (!s.empty()) s += "*";
    s += to_string(v);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

// Sparse polynomial with exact rational coefficients. No stored coefficient
// is ever zero, so equal polynomials have identical term maps.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational>;

  Poly() = default;

  static Poly constant(const Rational& c) {
    Poly p;
    if (c != 0) p.terms_.emplace(Monomial{}, c);
    return p;
  }
  static Poly var(VarId v) { return term(Monomial(v), 1); }
  static Poly term(const Monomial& m, const Rational& c) {
    Poly p;
    if (c != 0) p.terms_.emplace(m, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  // -1 for the zero polynomial.
  int total_degree() const {
    return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    const int d = terms_.begin()->first.degree();
    return terms_.rbegin()->first.degree() == d;
  }

  int degree_in(VarId v) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in(v));
    return d;
  }

  std::set<VarId> variables() const {
    std::set<VarId> vs;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m.factors()) vs.insert(v);
    return vs;
  }

  // Largest monomial in the graded order and its coefficient.
  const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
  const Rational& leading_coefficient() const { return terms_.rbegin()->second; }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [m, c] : terms_) c *= s;
    }
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        auto [it, inserted] = r.terms_.try_emplace(ma * mb, ca * cb);
        if (!inserted) it->second += ca * cb;
      }
    }
    std::erase_if(r.terms_, [](const auto& kv) { return kv.second == 0; });
    return r;
  }

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }

 private:
  Terms terms_;
};

// Canonical text form: terms in descending monomial order, coefficients as
// exact p/q, factors joined by '*'.
inline std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    Rational a = abs(c);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    if (m.is_one()) {
      s += to_string(a);
    } else if (a == 1) {
      s += to_string(m);
    } else {
      s += to_string(a) + "*" + to_string(m);
    }
  }
  return s;
}

inline Poly pow(const Poly& p, unsigned e) {
  Poly r = Poly::constant(1);
  Poly base = p;
  while (e > 0) {
    if (e & 1u) r = r * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return r;
}

inline Poly partial_derivative(const Poly& p, VarId v) {
  Poly r;
  for (const auto& [m, c] : p.terms()) {
    const int e = m.degree_in(v);
    if (e == 0) continue;
    r.add_term(*divide(m, Monomial(v)), c * e);
  }
  return r;
}

// Ring homomorphism sending each variable to its image. Every variable that
// occurs in p must be mapped.
inline Poly substitute(const Poly& p, const std::map<VarId, Poly>& images) {
  std::map<std::pair<VarId, int>, Poly> powers;
  auto power_of = [&](VarId v, int e) -> const Poly& {
    auto key = std::make_pair(v, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    auto img = images.find(v);
    if (img == images.end()) throw UnmappedVariable(v);
    return powers.emplace(key, pow(img->second, static_cast<unsigned>(e)))
        .first->second;
  };
  Poly r;
  for (const auto& [m, c] : p.terms()) {
    Poly t = Poly::constant(c);
    for (const auto& [v, e] : m.factors()) {
      t = t * power_of(v, e);
      if (t.is_zero()) break;
    }
    r += t;
  }
  return r;
}

// Like substitute, but variables without an image are left untouched.
inline Poly specialize(const Poly& p, const std::map<VarId, Poly>& images) {
  std::map<VarId, Poly> full = images;
  for (VarId v : p.variables()) full.try_emplace(v, Poly::var(v));
  return substitute(p, full);
}

// The q with p = q*v + (terms free of v). Requires deg_v(p) <= 1.
inline Poly coefficient_of(const Poly& p, VarId v) {
  Poly r;
  const Monomial mv(v);
  for (const auto& [m, c] : p.terms()) {
    const int e = m.degree_in(v);
    if (e > 1) throw NotLinear(v);
    if (e == 1) r.add_term(*divide(m, mv), c);
  }
  return r;
}

// Q(d): replaces each monomial v^b of Q by the operator d^|b|/dv^b and applies
// it to p.
inline Poly apply_differential_operator(const Poly& q, const Poly& p) {
  Poly r;
  for (const auto& [mq, cq] : q.terms()) {
    for (const auto& [mp, cp] : p.terms()) {
      auto rest = divide(mp, mq);
      if (!rest) continue;
      Integer f = 1;
      for (const auto& [v, b] : mq.factors()) f *= falling_factorial(mp.degree_in(v), b);
      r.add_term(*rest, cq * cp * Rational(f));
    }
  }
  return r;
}

// Largest derivation order among X/Y variables of p, -1 for constants.
inline int order_of(const Poly& p) {
  int o = -1;
  for (VarId v : p.variables())
    if (v.family == Family::JetX || v.family == Family::TensorY) o = std::max(o, v.order());
  return o;
}

}  // namespace diffhom
