#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "diffhom/poly.hpp"
#include "diffhom/rational.hpp"

namespace diffhom {

// Sparse vector: entries sorted by column, no explicit zeros.
using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

// a + s*b
inline SparseVec axpy(const SparseVec& a, const Rational& s, const SparseVec& b) {
  SparseVec r;
  r.reserve(a.size() + b.size());
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      r.push_back(*ia++);
    } else if (ia == a.end() || ib->first < ia->first) {
      r.emplace_back(ib->first, s * ib->second);
      ++ib;
    } else {
      Rational v = ia->second + s * ib->second;
      if (v != 0) r.emplace_back(ia->first, std::move(v));
      ++ia;
      ++ib;
    }
  }
  return r;
}

// Incremental row echelon form over the rationals. Rows are kept with a unit
// pivot at their first column; pivots are the first nonzero column after
// reduction, so results depend only on insertion order and column order.
class Echelon {
 public:
  // Reduces v against the stored rows; the result has no entry on a pivot.
  SparseVec reduce(SparseVec v) const {
    std::size_t pos = 0;
    while (pos < v.size()) {
      auto it = rows_.find(v[pos].first);
      if (it == rows_.end()) {
        ++pos;
        continue;
      }
      Rational c = -v[pos].second;
      v = axpy(v, c, it->second);
    }
    return v;
  }

  // Adds v to the row space. Returns false if v was already in the span.
  bool insert(const SparseVec& v) {
    SparseVec r = reduce(v);
    if (r.empty()) return false;
    Rational inv = 1 / r.front().second;
    for (auto& [c, x] : r) x *= inv;
    const std::size_t pivot = r.front().first;
    rows_.emplace(pivot, std::move(r));
    return true;
  }

  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  std::size_t rank() const { return rows_.size(); }

  // Basis of {x in Q^ncols : row . x = 0 for every stored row}. One vector per
  // non-pivot column f, ascending, normalized with x_f = 1.
  std::vector<SparseVec> kernel(std::size_t ncols) const {
    std::vector<SparseVec> out;
    for (std::size_t f = 0; f < ncols; ++f) {
      if (rows_.count(f)) continue;
      std::map<std::size_t, Rational> x;
      x[f] = 1;
      // Pivots above f cannot be forced nonzero; solve pivots below f in
      // descending order.
      for (auto it = std::make_reverse_iterator(rows_.lower_bound(f)); it != rows_.rend(); ++it) {
        const auto& row = it->second;
        Rational s = 0;
        for (std::size_t t = 1; t < row.size(); ++t) {
          auto xv = x.find(row[t].first);
          if (xv != x.end()) s += row[t].second * xv->second;
        }
        if (s != 0) x[it->first] = -s;
      }
      out.emplace_back(x.begin(), x.end());
    }
    return out;
  }

 private:
  std::map<std::size_t, SparseVec> rows_;
};

inline std::size_t rank_of(const std::vector<SparseVec>& vs) {
  Echelon e;
  for (const auto& v : vs) e.insert(v);
  return e.rank();
}

// Assigns dense column ids to monomials, in first-seen order.
class MonomialIndex {
 public:
  std::size_t id(const Monomial& m) {
    auto [it, inserted] = ids_.try_emplace(m, monomials_.size());
    if (inserted) monomials_.push_back(m);
    return it->second;
  }
  std::optional<std::size_t> find(const Monomial& m) const {
    auto it = ids_.find(m);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t size() const { return monomials_.size(); }
  const Monomial& monomial(std::size_t i) const { return monomials_[i]; }

  SparseVec to_vec(const Poly& p) {
    SparseVec v;
    v.reserve(p.size());
    for (const auto& [m, c] : p.terms()) v.emplace_back(id(m), c);
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }

  Poly to_poly(const SparseVec& v) const {
    Poly p;
    for (const auto& [i, c] : v) p.add_term(monomials_[i], c);
    return p;
  }

 private:
  std::map<Monomial, std::size_t> ids_;
  std::vector<Monomial> monomials_;
};

// Span bookkeeping for families of polynomials.
class PolySpan {
 public:
  bool insert(const Poly& p) { return echelon_.insert(index_.to_vec(p)); }
  bool contains(const Poly& p) {
    return echelon_.contains(index_.to_vec(p));
  }
  std::size_t rank() const { return echelon_.rank(); }

 private:
  MonomialIndex index_;
  Echelon echelon_;
};

inline std::size_t poly_rank(const std::vector<Poly>& ps) {
  PolySpan s;
  for (const auto& p : ps) s.insert(p);
  return s.rank();
}

}  // namespace diffhom
