#pragma once

#include <algorithm>
#include <iterator>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "diffhom/combinatorics.hpp"
#include "diffhom/determinant.hpp"
#include "diffhom/errors.hpp"
#include "diffhom/limits.hpp"
#include "diffhom/linalg.hpp"
#include "diffhom/poly.hpp"
#include "diffhom/tensor.hpp"

namespace diffhom {

// Partition of d stored as d non-decreasing parts, padded with zeros in front.
// Rows of the Young diagram are read top to bottom in this order, so the
// longest row is at the bottom.
class Partition {
 public:
  explicit Partition(std::vector<int> parts) {
    for (int p : parts)
      if (p < 0) throw Error("negative partition part " + std::to_string(p));
    parts.erase(std::remove(parts.begin(), parts.end(), 0), parts.end());
    std::sort(parts.begin(), parts.end());
    for (int p : parts) d_ += p;
    if (d_ < 1) throw Error("partition of a positive integer expected");
    parts_.assign(static_cast<std::size_t>(d_) - parts.size(), 0);
    parts_.insert(parts_.end(), parts.begin(), parts.end());

    // mu'_c = number of rows longer than c, padded to length d.
    std::vector<int> cols;
    for (int c = 0; c < parts_.back(); ++c) {
      int len = 0;
      for (int p : parts_) len += p > c ? 1 : 0;
      cols.push_back(len);
    }
    std::sort(cols.begin(), cols.end());
    conjugate_.assign(static_cast<std::size_t>(d_) - cols.size(), 0);
    conjugate_.insert(conjugate_.end(), cols.begin(), cols.end());
  }

  // "2,2" or "(2, 2)".
  static Partition parse(const std::string& text) {
    std::string s;
    for (char c : text) s += (c == '(' || c == ')' || c == ',') ? ' ' : c;
    std::istringstream in(s);
    std::vector<int> parts;
    std::string tok;
    while (in >> tok) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw Error("bad partition entry '" + tok + "'");
      parts.push_back(v);
    }
    return Partition(std::move(parts));
  }

  int size() const { return d_; }
  const std::vector<int>& parts() const { return parts_; }
  const std::vector<int>& conjugate() const { return conjugate_; }

  std::vector<int> nonzero_parts() const {
    std::vector<int> r;
    for (int p : parts_)
      if (p > 0) r.push_back(p);
    return r;
  }

  // d_i = mu'_1 + ... + mu'_i on the zero-padded conjugate, 0 <= i <= d.
  int d_k(int i) const {
    if (i < 0 || i > d_) throw IndexOutOfRange("d_k index " + std::to_string(i));
    int s = 0;
    for (int c = 0; c < i; ++c) s += conjugate_[static_cast<std::size_t>(c)];
    return s;
  }

  Partition conjugate_partition() const { return Partition(conjugate_); }

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }

 private:
  int d_ = 0;
  std::vector<int> parts_;
  std::vector<int> conjugate_;
};

inline std::string to_string(const Partition& mu) {
  std::string s = "(";
  bool first = true;
  for (int p : mu.nonzero_parts()) {
    s += (first ? "" : ",") + std::to_string(p);
    first = false;
  }
  return s + ")";
}

// d = q(k+1) + r: q repeated k+1-r times, then q+1 repeated r times.
inline Partition mu_k(int d, int k) {
  if (d < 1 || k < 0) throw IndexOutOfRange("mu_k needs d >= 1, k >= 0");
  const int q = d / (k + 1);
  const int r = d % (k + 1);
  std::vector<int> parts(static_cast<std::size_t>(k + 1 - r), q);
  parts.insert(parts.end(), static_cast<std::size_t>(r), q + 1);
  return Partition(parts);
}

struct YoungTableau {
  Partition shape;
  std::vector<std::vector<int>> rows;  // top to bottom, aligned with shape.parts()

  // Column c lists its entries from the bottom row upwards.
  std::vector<std::vector<int>> columns() const {
    std::vector<std::vector<int>> cols;
    const int width = shape.parts().back();
    for (int c = 0; c < width; ++c) {
      std::vector<int> col;
      for (auto it = rows.rbegin(); it != rows.rend(); ++it)
        if (static_cast<int>(it->size()) > c) col.push_back((*it)[static_cast<std::size_t>(c)]);
      cols.push_back(std::move(col));
    }
    return cols;
  }

  bool is_injective() const {
    std::set<int> seen;
    for (const auto& row : rows)
      for (int x : row)
        if (x < 1 || x > shape.size() || !seen.insert(x).second) return false;
    return static_cast<int>(seen.size()) == shape.size();
  }

  // Rows increase left to right, columns increase bottom to top.
  bool is_standard() const {
    if (!is_injective()) return false;
    for (const auto& row : rows)
      for (std::size_t c = 1; c < row.size(); ++c)
        if (row[c - 1] >= row[c]) return false;
    for (const auto& col : columns())
      for (std::size_t r = 1; r < col.size(); ++r)
        if (col[r - 1] >= col[r]) return false;
    return true;
  }
};

inline std::string to_string(const YoungTableau& t) {
  std::string s;
  for (const auto& row : t.rows) {
    if (row.empty()) continue;
    if (!s.empty()) s += " / ";
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? " " : "") + std::to_string(row[i]);
  }
  return s;
}

// Places 1..d in order; a cell is free once its left neighbour and the cell
// below it are filled.
inline std::vector<YoungTableau> enum_standard_tableaux(const Partition& mu, const Limits& limits = {}) {
  const int d = mu.size();
  const Integer bound = factorial(static_cast<unsigned long>(d));
  limits.check_enumeration(bound.fits_ulong_p() ? bound.get_ui() : static_cast<std::size_t>(-1),
                           "standard tableaux");
  const auto& parts = mu.parts();
  const std::size_t nrows = parts.size();
  std::vector<std::vector<int>> rows(nrows);
  std::vector<YoungTableau> out;
  auto rec = [&](auto&& self, int next) -> void {
    if (next > d) {
      out.push_back(YoungTableau{mu, rows});
      return;
    }
    for (std::size_t r = 0; r < nrows; ++r) {
      const std::size_t c = rows[r].size();
      if (static_cast<int>(c) >= parts[r]) continue;
      if (r + 1 < nrows && rows[r + 1].size() <= c) continue;
      rows[r].push_back(next);
      self(self, next + 1);
      rows[r].pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

inline Poly z_var(int i) { return Poly::var(VarId::Zv(i)); }

// e_j of the variables Z_s, s in subset (1-based). e_0 = 1.
inline Poly elementary_symmetric(const std::vector<int>& subset, int j) {
  Poly p;
  if (j < 0 || j > static_cast<int>(subset.size())) return p;
  for (const auto& pick : subsets_of_size(static_cast<int>(subset.size()), j, 0)) {
    std::vector<Monomial::Factor> fs;
    for (int i : pick) fs.emplace_back(VarId::Zv(subset[static_cast<std::size_t>(i)]), 1);
    p.add_term(Monomial::from_factors(std::move(fs)), 1);
  }
  return p;
}

enum class IdealKind { Ik, DCP, Custom };

struct IdealPresentation {
  IdealKind kind = IdealKind::Custom;
  int d = 0;  // ambient variables Z_1..Z_d
  std::vector<Poly> generators;
  std::string label;
};

// (e_1, ..., e_d, Z_1^{k+1}, ..., Z_d^{k+1})
inline IdealPresentation ik_ideal(int d, int k) {
  if (d < 1 || k < 0) throw IndexOutOfRange("Ik needs d >= 1, k >= 0");
  IdealPresentation I{IdealKind::Ik, d, {}, "I_" + std::to_string(k) + "(d=" + std::to_string(d) + ")"};
  std::vector<int> all(static_cast<std::size_t>(d));
  std::iota(all.begin(), all.end(), 1);
  for (int j = 1; j <= d; ++j) I.generators.push_back(elementary_symmetric(all, j));
  for (int i = 1; i <= d; ++i) I.generators.push_back(Poly::term(Monomial(VarId::Zv(i), k + 1), 1));
  return I;
}

// C_mu = { e_j(S) : |S| = i, i - d_i(mu) < j <= i }, subsets in lexicographic
// order within each size, sizes ascending, j ascending.
inline IdealPresentation dcp_generators(const Partition& mu) {
  const int d = mu.size();
  IdealPresentation I{IdealKind::DCP, d, {}, "DCP" + to_string(mu)};
  for (int i = 1; i <= d; ++i) {
    const int lo = std::max(1, i - mu.d_k(i) + 1);
    for (const auto& s : subsets_of_size(d, i))
      for (int j = lo; j <= i; ++j) I.generators.push_back(elementary_symmetric(s, j));
  }
  return I;
}

inline IdealPresentation dcp_generators(const Partition& mu, int d) {
  if (mu.size() != d)
    throw IndexOutOfRange(to_string(mu) + " is not a partition of " + std::to_string(d));
  return dcp_generators(mu);
}

namespace detail {

// Monomials in Z_1..Z_d with every exponent <= bound, grouped by degree,
// ascending within each degree.
inline std::map<int, std::vector<Monomial>> box_monomials(int d, int bound, const Limits& limits) {
  limits.check_box(checked_pow(static_cast<std::size_t>(bound + 1), d), "Z box");
  std::map<int, std::vector<Monomial>> out;
  for (const auto& e : box_tuples(bound + 1, d)) {
    std::vector<Monomial::Factor> fs;
    for (int i = 0; i < d; ++i) fs.emplace_back(VarId::Zv(i + 1), e[static_cast<std::size_t>(i)]);
    Monomial m = Monomial::from_factors(std::move(fs));
    out[m.degree()].push_back(std::move(m));
  }
  for (auto& [deg, ms] : out) std::sort(ms.begin(), ms.end());
  return out;
}

// All monomials in Z_1..Z_d of the given degree.
inline std::vector<Monomial> monomials_of_degree(int d, int degree) {
  std::vector<Monomial> out;
  for (const auto& e : compositions(degree, d)) {
    std::vector<Monomial::Factor> fs;
    for (int i = 0; i < d; ++i) fs.emplace_back(VarId::Zv(i + 1), e[static_cast<std::size_t>(i)]);
    out.push_back(Monomial::from_factors(std::move(fs)));
  }
  return out;
}

inline bool all_homogeneous(const std::vector<Poly>& ps) {
  return std::all_of(ps.begin(), ps.end(), [](const Poly& p) { return p.is_zero() || p.is_homogeneous(); });
}

inline void require_z_only(const Poly& p, int d) {
  for (VarId v : p.variables())
    if (v.family != Family::Z || v.major < 1 || v.major > d) throw UnsupportedVariable(v);
}

// Drops every monomial with an exponent above `bound`.
inline Poly truncate_box(const Poly& p, int bound) {
  Poly r;
  for (const auto& [m, c] : p.terms()) {
    bool inside = true;
    for (const auto& [v, e] : m.factors()) inside = inside && e <= bound;
    if (inside) r.add_term(m, c);
  }
  return r;
}

}  // namespace detail

// Bounded-degree membership: p is in I if it lies in the span of m*g with
// deg(m*g) <= cap. Homogeneous generators make the test degree by degree.
// A negative answer only means "not certified up to the cap".
class IdealMembership {
 public:
  IdealMembership(IdealPresentation ideal, int cap, Limits limits = {})
      : ideal_(std::move(ideal)), cap_(cap), limits_(limits),
        graded_(detail::all_homogeneous(ideal_.generators)) {
    for (const auto& g : ideal_.generators) detail::require_z_only(g, ideal_.d);
  }

  bool contains(const Poly& p) {
    if (p.is_zero()) return true;
    detail::require_z_only(p, ideal_.d);
    if (!graded_) {
      if (p.total_degree() > cap_) return false;
      Slice& s = slice(-1);
      return s.echelon.contains(s.index.to_vec(p));
    }
    std::map<int, Poly> parts;
    for (const auto& [m, c] : p.terms()) parts[m.degree()].add_term(m, c);
    for (const auto& [deg, part] : parts) {
      if (deg > cap_) return false;
      Slice& s = slice(deg);
      if (!s.echelon.contains(s.index.to_vec(part))) return false;
    }
    return true;
  }

  int cap() const { return cap_; }

 private:
  struct Slice {
    MonomialIndex index;
    Echelon echelon;
  };

  // degree -1 holds the ungraded span up to the cap.
  Slice& slice(int degree) {
    auto it = slices_.find(degree);
    if (it != slices_.end()) return it->second;
    Slice& s = slices_[degree];
    for (const auto& g : ideal_.generators) {
      if (g.is_zero()) continue;
      const int gd = g.total_degree();
      const int lo = degree < 0 ? 0 : degree - gd;
      const int hi = degree < 0 ? cap_ - gd : degree - gd;
      for (int md = std::max(lo, 0); md <= hi; ++md) {
        const auto ms = detail::monomials_of_degree(ideal_.d, md);
        limits_.check_monomials(ms.size(), "membership multipliers");
        for (const auto& m : ms) s.echelon.insert(s.index.to_vec(Poly::term(m, 1) * g));
      }
    }
    return s;
  }

  IdealPresentation ideal_;
  int cap_;
  Limits limits_;
  bool graded_;
  std::map<int, Slice> slices_;
};

inline bool ideal_membership(const Poly& p, const IdealPresentation& ideal, int cap,
                             const Limits& limits = {}) {
  return IdealMembership(ideal, cap, limits).contains(p);
}

struct DcpEqualityReport {
  int d = 0;
  int k = 0;
  int cap = 0;
  std::string mu;
  std::size_t ik_generators = 0;
  std::size_t dcp_generators = 0;
  std::vector<std::string> ik_not_in_dcp;  // generators of I_k not certified in I_mu
  std::vector<std::string> dcp_not_in_ik;

  bool pass() const { return ik_not_in_dcp.empty() && dcp_not_in_ik.empty(); }
};

inline DcpEqualityReport verify_dcp_equality(int d, int k, int cap, const Limits& limits = {}) {
  DcpEqualityReport rep;
  rep.d = d;
  rep.k = k;
  rep.cap = cap;
  const Partition mu = mu_k(d, k);
  rep.mu = to_string(mu);
  const auto ik = ik_ideal(d, k);
  const auto dcp = dcp_generators(mu);
  rep.ik_generators = ik.generators.size();
  rep.dcp_generators = dcp.generators.size();
  IdealMembership in_dcp(dcp, cap, limits);
  IdealMembership in_ik(ik, cap, limits);
  for (const auto& g : ik.generators)
    if (!in_dcp.contains(g)) rep.ik_not_in_dcp.push_back(to_string(g));
  for (const auto& g : dcp.generators)
    if (!in_ik.contains(g)) rep.dcp_not_in_ik.push_back(to_string(g));
  return rep;
}

// Common solutions of Q(d) = 0, Q ranging over the generators, inside the
// space of polynomials with every exponent <= box. A monomial generator with
// an exponent above the box kills the whole box and is skipped. Output is
// ordered by degree, then by free monomial.
inline std::vector<Poly> perp_basis(const IdealPresentation& ideal, int box, const Limits& limits = {}) {
  const auto by_degree = detail::box_monomials(ideal.d, box, limits);
  std::vector<Poly> ops;
  for (const auto& g : ideal.generators) {
    detail::require_z_only(g, ideal.d);
    if (g.is_zero()) continue;
    if (g.size() == 1) {
      const Monomial& m = g.terms().begin()->first;
      bool kills_box = false;
      for (const auto& [v, e] : m.factors()) kills_box = kills_box || e > box;
      if (kills_box) continue;
    }
    ops.push_back(g);
  }

  std::vector<std::vector<Monomial>> groups;
  if (detail::all_homogeneous(ops)) {
    for (const auto& [deg, ms] : by_degree) groups.push_back(ms);
  } else {
    groups.emplace_back();
    for (const auto& [deg, ms] : by_degree) groups.back().insert(groups.back().end(), ms.begin(), ms.end());
  }

  std::vector<Poly> out;
  for (const auto& cols : groups) {
    MonomialIndex rows;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::size_t, Rational>>> entries;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const Poly m = Poly::term(cols[c], 1);
      for (std::size_t g = 0; g < ops.size(); ++g) {
        const Poly image = apply_differential_operator(ops[g], m);
        for (const auto& [rm, x] : image.terms()) entries[{g, rows.id(rm)}].emplace_back(c, x);
      }
    }
    Echelon e;
    for (const auto& [key, row] : entries) e.insert(row);
    for (const auto& x : e.kernel(cols.size())) {
      Poly p;
      for (const auto& [c, v] : x) p.add_term(cols[c], v);
      out.push_back(std::move(p));
    }
  }
  return out;
}

// dim A / image(ideal) with A = C[Z]/(Z_i^{box+1}): the image is spanned by
// the truncations of m*g for box monomials m.
inline std::size_t quotient_dimension(const IdealPresentation& ideal, int box, const Limits& limits = {}) {
  const auto by_degree = detail::box_monomials(ideal.d, box, limits);
  std::size_t total = 0;
  for (const auto& [deg, ms] : by_degree) total += ms.size();
  MonomialIndex index;
  std::map<int, Echelon> spans;
  const bool graded = detail::all_homogeneous(ideal.generators);
  std::size_t rank = 0;
  for (const auto& g : ideal.generators) {
    detail::require_z_only(g, ideal.d);
    if (g.is_zero()) continue;
    for (const auto& [deg, ms] : by_degree)
      for (const auto& m : ms) {
        const Poly v = detail::truncate_box(Poly::term(m, 1) * g, box);
        if (v.is_zero()) continue;
        Echelon& e = spans[graded ? v.total_degree() : 0];
        if (e.insert(index.to_vec(v))) ++rank;
      }
  }
  return total - rank;
}

// A = C[Z]/(Z_1^{k+1}, ..., Z_d^{k+1}) modulo the image of (e_1, ..., e_d).
inline std::size_t quotient_dimension(int d, int k, const Limits& limits = {}) {
  IdealPresentation sym{IdealKind::Custom, d, {}, "symmetric"};
  std::vector<int> all(static_cast<std::size_t>(d));
  std::iota(all.begin(), all.end(), 1);
  for (int j = 1; j <= d; ++j) sym.generators.push_back(elementary_symmetric(all, j));
  return quotient_dimension(sym, k, limits);
}

// d! / ((q!)^{k+1-r} ((q+1)!)^r), d = q(k+1) + r.
inline Integer harmonic_dimension_formula(int d, int k) {
  const int q = d / (k + 1);
  const int r = d % (k + 1);
  const Integer fq = factorial(static_cast<unsigned long>(q));
  const Integer fq1 = factorial(static_cast<unsigned long>(q + 1));
  return factorial(static_cast<unsigned long>(d)) /
         (ipow(fq, static_cast<unsigned long>(k + 1 - r)) * ipow(fq1, static_cast<unsigned long>(r)));
}

// det (Z_{c_a}^b), rows a = entries of the column in the given order,
// b = 0..len-1.
inline Poly delta_column(const std::vector<int>& column) {
  const std::size_t n = column.size();
  PolyMatrix m(n, std::vector<Poly>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      m[a][b] = Poly::term(Monomial(VarId::Zv(column[a]), static_cast<int>(b)), 1);
  return determinant(m);
}

inline Poly delta_T(const YoungTableau& t) {
  Poly p = Poly::constant(1);
  for (const auto& col : t.columns()) p = p * delta_column(col);
  return p;
}

struct SpanningReport {
  std::string mu;
  std::size_t tableaux = 0;
  std::size_t rank = 0;
  std::size_t dimension = 0;    // dim I_mu^perp from perp_basis
  Integer multinomial = 0;      // d! / prod(mu_i!)
  bool all_harmonic = false;    // every Delta(T) killed by every generator of I_mu

  bool pass() const {
    return all_harmonic && rank == dimension && Integer(static_cast<unsigned long>(dimension)) == multinomial;
  }
};

// Span of all partial derivatives of the Delta(T), T standard of shape mu,
// compared with the mu-harmonic space. Z_i^d lies in I_mu for every mu, so
// the harmonic space sits in the box of exponents <= d-1.
inline SpanningReport verify_spanning(const Partition& mu, const Limits& limits = {}) {
  SpanningReport rep;
  rep.mu = to_string(mu);
  const int d = mu.size();
  const auto ideal = dcp_generators(mu);
  rep.dimension = perp_basis(ideal, d - 1, limits).size();
  rep.multinomial = multinomial(d, mu.parts());

  const auto tableaux = enum_standard_tableaux(mu, limits);
  rep.tableaux = tableaux.size();
  rep.all_harmonic = true;
  PolySpan span;
  for (const auto& t : tableaux) {
    const Poly delta = delta_T(t);
    for (const auto& g : ideal.generators)
      if (!apply_differential_operator(g, delta).is_zero()) rep.all_harmonic = false;
    std::vector<int> bounds;
    for (int i = 1; i <= d; ++i) bounds.push_back(delta.degree_in(VarId::Zv(i)));
    // every d^beta with beta_i <= deg_{Z_i} Delta(T)
    std::vector<int> beta(static_cast<std::size_t>(d), 0);
    while (true) {
      std::vector<Monomial::Factor> fs;
      for (int i = 0; i < d; ++i) fs.emplace_back(VarId::Zv(i + 1), beta[static_cast<std::size_t>(i)]);
      span.insert(apply_differential_operator(Poly::term(Monomial::from_factors(std::move(fs)), 1), delta));
      int i = d - 1;
      while (i >= 0 && beta[static_cast<std::size_t>(i)] == bounds[static_cast<std::size_t>(i)]) {
        beta[static_cast<std::size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
      ++beta[static_cast<std::size_t>(i)];
    }
  }
  rep.rank = span.rank();
  return rep;
}

struct BlockSurjectivityReport {
  int d = 0;
  int k = 0;
  int q = 0;
  int r = 0;
  std::size_t block_partitions = 0;
  std::size_t products = 0;
  std::size_t rank = 0;
  std::size_t invariant_dimension = 0;  // dim (F_k^{(x)d})^U
  std::size_t quotient = 0;             // quotient_dimension(d, k)
  bool all_invariant = false;
  bool escalated = false;  // unordered block partitions fell short; all permutations used

  bool pass() const { return all_invariant && rank == invariant_dimension && rank == quotient; }
};

namespace detail {

// Splits `slots` into q unordered blocks of size b, followed by whatever is
// left over.
inline void block_partitions(std::vector<int> slots, int q, int b, std::vector<std::vector<int>>& cur,
                             std::vector<std::vector<std::vector<int>>>& out) {
  if (q == 0 || slots.empty()) {
    auto full = cur;
    full.push_back(slots);
    out.push_back(std::move(full));
    return;
  }
  const int first = slots.front();
  std::vector<int> rest(slots.begin() + 1, slots.end());
  for (const auto& pick : subsets_of_size(static_cast<int>(rest.size()), b - 1, 0)) {
    std::vector<int> block{first};
    std::vector<int> left;
    std::size_t p = 0;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if (p < pick.size() && pick[p] == static_cast<int>(i)) {
        block.push_back(rest[i]);
        ++p;
      } else {
        left.push_back(rest[i]);
      }
    }
    cur.push_back(block);
    block_partitions(left, q - 1, b, cur, out);
    cur.pop_back();
  }
}

inline std::vector<Poly> block_family(const std::vector<int>& slots) {
  if (slots.empty()) return {Poly::constant(1)};
  std::vector<Poly> out;
  for (const auto& alpha : wronskian_indices(static_cast<int>(slots.size())))
    out.push_back(wronskian_on_slots(alpha, slots));
  return out;
}

}  // namespace detail

// Products of Wronskian bases on q blocks of k+1 slots and one block of r
// slots span (F_k^{(x)d})^U. Runs over unordered block partitions first and
// over all permutations of the slots only if that falls short.
inline BlockSurjectivityReport verify_block_surjectivity(int d, int k, const Limits& limits = {}) {
  BlockSurjectivityReport rep;
  rep.d = d;
  rep.k = k;
  rep.q = d / (k + 1);
  rep.r = d % (k + 1);
  rep.invariant_dimension = invariant_tensor_basis(k, d, limits).size();
  rep.quotient = quotient_dimension(d, k, limits);
  rep.all_invariant = true;

  PolySpan span;
  auto add_partition = [&](const std::vector<std::vector<int>>& blocks) {
    std::vector<Poly> acc{Poly::constant(1)};
    for (const auto& b : blocks) {
      std::vector<Poly> next;
      for (const auto& x : acc)
        for (const auto& y : detail::block_family(b)) next.push_back(x * y);
      acc = std::move(next);
    }
    for (const auto& p : acc) {
      ++rep.products;
      const Tensor t = multilinear_to_tensor(p, k, d);
      for (int ell = 1; ell <= d; ++ell)
        if (!apply_J_ell(t, ell).is_zero()) rep.all_invariant = false;
      span.insert(p);
    }
    ++rep.block_partitions;
  };

  std::vector<int> slots(static_cast<std::size_t>(d));
  std::iota(slots.begin(), slots.end(), 1);
  // remainder block first, then the q unordered full blocks on what is left
  for (const auto& rest : subsets_of_size(d, rep.r)) {
    std::vector<int> left;
    std::set_difference(slots.begin(), slots.end(), rest.begin(), rest.end(), std::back_inserter(left));
    std::vector<std::vector<int>> cur;
    std::vector<std::vector<std::vector<int>>> parts;
    detail::block_partitions(left, rep.q, k + 1, cur, parts);
    for (auto& blocks : parts) {
      blocks.back() = rest;
      add_partition(blocks);
    }
  }

  if (span.rank() < rep.invariant_dimension) {
    rep.escalated = true;
    const Integer n = factorial(static_cast<unsigned long>(d));
    limits.check_enumeration(n.fits_ulong_p() ? n.get_ui() : static_cast<std::size_t>(-1), "slot permutations");
    std::vector<int> sigma = slots;
    do {
      std::vector<std::vector<int>> blocks;
      for (int b = 0; b < rep.q; ++b)
        blocks.emplace_back(sigma.begin() + b * (k + 1), sigma.begin() + (b + 1) * (k + 1));
      blocks.emplace_back(sigma.begin() + rep.q * (k + 1), sigma.end());
      add_partition(blocks);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }
  rep.rank = span.rank();
  return rep;
}

}  // namespace diffhom
