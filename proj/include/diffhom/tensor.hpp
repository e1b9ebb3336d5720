#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "diffhom/combinatorics.hpp"
#include "diffhom/determinant.hpp"
#include "diffhom/errors.hpp"
#include "diffhom/limits.hpp"
#include "diffhom/linalg.hpp"
#include "diffhom/poly.hpp"

namespace diffhom {

using Coord = std::vector<int>;
using RationalMatrix = std::vector<std::vector<Rational>>;

// F_k = span(f_0..f_k) with the maximal-index nilpotent J(f_i) = i f_{i-1}.
struct NilpotentModel {
  int k = 0;

  // Column i holds the image of f_i.
  RationalMatrix matrix() const {
    RationalMatrix m(static_cast<std::size_t>(k + 1),
                     std::vector<Rational>(static_cast<std::size_t>(k + 1), Rational(0)));
    for (int i = 1; i <= k; ++i) m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(i)] = i;
    return m;
  }

  std::vector<Rational> apply(const std::vector<Rational>& v) const {
    std::vector<Rational> r(v.size(), Rational(0));
    for (std::size_t i = 1; i < v.size(); ++i) r[i - 1] += static_cast<long>(i) * v[i];
    return r;
  }
};

// Element of F_k^{(x)d} in the basis f_{a_1} (x) ... (x) f_{a_d}.
class Tensor {
 public:
  Tensor(int k, int d) : k_(k), d_(d) {}

  static Tensor basis(int k, const Coord& a) {
    Tensor t(k, static_cast<int>(a.size()));
    t.add(a, 1);
    return t;
  }

  int k() const { return k_; }
  int d() const { return d_; }
  const std::map<Coord, Rational>& coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }

  Rational at(const Coord& a) const {
    auto it = coords_.find(a);
    return it == coords_.end() ? Rational(0) : it->second;
  }

  void add(const Coord& a, const Rational& c) {
    if (static_cast<int>(a.size()) != d_)
      throw IndexOutOfRange("tensor coordinate of length " + std::to_string(a.size()) +
                            ", expected " + std::to_string(d_));
    for (int x : a)
      if (x < 0 || x > k_) throw IndexOutOfRange("tensor index " + std::to_string(x) + " outside 0.." + std::to_string(k_));
    if (c == 0) return;
    auto [it, inserted] = coords_.try_emplace(a, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coords_.erase(it);
    }
  }

  Tensor& operator+=(const Tensor& o) {
    for (const auto& [a, c] : o.coords_) add(a, c);
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    for (const auto& [a, c] : o.coords_) add(a, -c);
    return *this;
  }
  Tensor& operator*=(const Rational& s) {
    if (s == 0) coords_.clear();
    for (auto& [a, c] : coords_) c *= s;
    return *this;
  }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(const Rational& s, Tensor a) { return a *= s; }

  bool operator==(const Tensor& o) const {
    return k_ == o.k_ && d_ == o.d_ && coords_ == o.coords_;
  }

 private:
  int k_;
  int d_;
  std::map<Coord, Rational> coords_;
};

inline std::string to_string(const Tensor& t) {
  if (t.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [a, c] : t.coords()) {
    if (!first) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    first = false;
    Rational m = abs(c);
    if (m != 1) s += to_string(m) + "*";
    s += "f(";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    s += ")";
  }
  return s;
}

// J^(l): sum over ordered l-tuples of distinct slots of J applied in those
// slots. Each unordered slot set therefore contributes l! times.
inline Tensor apply_J_ell(const Tensor& t, int ell) {
  if (ell < 1 || ell > t.d())
    throw IndexOutOfRange("J^(l) needs 1 <= l <= d, got l=" + std::to_string(ell));
  const Rational mult(factorial(static_cast<unsigned long>(ell)));
  Tensor r(t.k(), t.d());
  const auto slot_sets = subsets_of_size(t.d(), ell, 0);
  for (const auto& [a, c] : t.coords()) {
    for (const auto& slots : slot_sets) {
      Coord b = a;
      Rational coef = c * mult;
      for (int s : slots) {
        int& x = b[static_cast<std::size_t>(s)];
        if (x == 0) {
          coef = 0;
          break;
        }
        coef *= x;
        --x;
      }
      if (coef != 0) r.add(b, coef);
    }
  }
  return r;
}

// Same ordered-sum operator for an arbitrary endomorphism M of F_k (column i
// of M is the image of f_i).
inline Tensor apply_endomorphism_ell(const Tensor& t, const RationalMatrix& m, int ell) {
  if (ell < 1 || ell > t.d())
    throw IndexOutOfRange("l must satisfy 1 <= l <= d, got " + std::to_string(ell));
  const Rational mult(factorial(static_cast<unsigned long>(ell)));
  Tensor r(t.k(), t.d());
  for (const auto& slots : subsets_of_size(t.d(), ell, 0)) {
    Tensor cur = t;
    for (int s : slots) {
      Tensor next(t.k(), t.d());
      for (const auto& [a, c] : cur.coords()) {
        const auto col = static_cast<std::size_t>(a[static_cast<std::size_t>(s)]);
        for (std::size_t row = 0; row < m.size(); ++row) {
          if (m[row][col] == 0) continue;
          Coord b = a;
          b[static_cast<std::size_t>(s)] = static_cast<int>(row);
          next.add(b, c * m[row][col]);
        }
      }
      cur = std::move(next);
    }
    cur *= mult;
    r += cur;
  }
  return r;
}

// (I + a J)^{(x)d} t, applied one slot at a time.
inline Tensor apply_one_parameter(const Tensor& t, const Rational& a) {
  Tensor cur = t;
  for (int s = 0; s < t.d(); ++s) {
    Tensor next(t.k(), t.d());
    for (const auto& [coord, c] : cur.coords()) {
      next.add(coord, c);
      const int x = coord[static_cast<std::size_t>(s)];
      if (x > 0) {
        Coord b = coord;
        b[static_cast<std::size_t>(s)] = x - 1;
        next.add(b, c * a * x);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

namespace detail {

// Kernel of the stacked maps apply(t, l), l = 1..d, restricted to the given
// coordinate columns.
inline std::vector<Tensor> kernel_on_coords(int k, int d, const std::vector<Coord>& cols,
                                            const std::function<Tensor(const Tensor&, int)>& op) {
  std::map<std::pair<int, Coord>, std::vector<std::pair<std::size_t, Rational>>> rows;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const Tensor b = Tensor::basis(k, cols[c]);
    for (int ell = 1; ell <= d; ++ell) {
      const Tensor image = op(b, ell);
      for (const auto& [a, x] : image.coords()) rows[{ell, a}].emplace_back(c, x);
    }
  }
  Echelon e;
  for (const auto& [key, row] : rows) e.insert(row);
  std::vector<Tensor> out;
  for (const auto& x : e.kernel(cols.size())) {
    Tensor t(k, d);
    for (const auto& [c, v] : x) t.add(cols[c], v);
    out.push_back(std::move(t));
  }
  return out;
}

inline int weight(const Coord& a) {
  int w = 0;
  for (int x : a) w += x;
  return w;
}

}  // namespace detail

// Basis of (F_k^{(x)d})^U = intersection of Ker J^(l), l = 1..d. Each J^(l)
// lowers the weight sum(a_s) by l, so the kernel is computed per weight.
// Output is ordered by weight, then by free coordinate (lexicographic).
inline std::vector<Tensor> invariant_tensor_basis(int k, int d, const Limits& limits = {}) {
  if (k < 0 || d < 1) throw IndexOutOfRange("need k >= 0 and d >= 1");
  limits.check_box(checked_pow(static_cast<std::size_t>(k + 1), d), "invariant tensors");
  std::map<int, std::vector<Coord>> by_weight;
  for (auto& a : box_tuples(k + 1, d)) by_weight[detail::weight(a)].push_back(std::move(a));
  std::vector<Tensor> out;
  for (const auto& [w, cols] : by_weight) {
    auto part = detail::kernel_on_coords(k, d, cols, apply_J_ell);
    for (auto& t : part) out.push_back(std::move(t));
  }
  return out;
}

// dim of the common kernel of the ordered-sum operators built from an
// arbitrary endomorphism (used to check independence from the choice of J).
inline std::size_t invariant_dimension_for(const RationalMatrix& m, int d, const Limits& limits = {}) {
  const int k = static_cast<int>(m.size()) - 1;
  limits.check_box(checked_pow(m.size(), d), "invariant tensors");
  const auto cols = box_tuples(k + 1, d);
  return detail::kernel_on_coords(k, d, cols, [&](const Tensor& t, int ell) {
           return apply_endomorphism_ell(t, m, ell);
         }).size();
}

// det of the n x n matrix whose column s is (J^T)^{alpha_s} applied to the
// coordinate column (V_s^(0), ..., V_s^(n-1)); entry (r, s) is
// r!/(r - alpha_s)! V_s^(r - alpha_s), zero when r < alpha_s.
inline Poly shifted_determinant(const std::vector<int>& alpha,
                                const std::function<VarId(std::size_t column, int order)>& var) {
  const std::size_t n = alpha.size();
  PolyMatrix m(n, std::vector<Poly>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) {
      const int a = alpha[s];
      const int row = static_cast<int>(r);
      if (row >= a)
        m[r][s] = Poly::term(Monomial(var(s, row - a)), Rational(falling_factorial(row, a)));
    }
  return determinant(m);
}

// W_alpha as a multilinear polynomial in Y_1..Y_d (column s uses slot s).
inline Poly wronskian_W(const std::vector<int>& alpha, int d, int k) {
  if (static_cast<int>(alpha.size()) != d)
    throw IndexOutOfRange("Wronskian index of length " + std::to_string(alpha.size()) +
                          " for d=" + std::to_string(d));
  for (int a : alpha)
    if (a < 0 || a > k) throw IndexOutOfRange("Wronskian shift " + std::to_string(a) + " outside 0.." + std::to_string(k));
  return shifted_determinant(alpha, [](std::size_t s, int t) { return VarId::Y(static_cast<int>(s) + 1, t); });
}

// W_alpha with column s placed on tensor slot slots[s].
inline Poly wronskian_on_slots(const std::vector<int>& alpha, const std::vector<int>& slots) {
  return shifted_determinant(alpha, [&](std::size_t s, int t) { return VarId::Y(slots[s], t); });
}

// The d! indices 0 <= alpha_i <= i-1, lexicographic.
inline std::vector<std::vector<int>> wronskian_indices(int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(static_cast<std::size_t>(d), 0);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == d) {
      out.push_back(a);
      return;
    }
    for (int v = 0; v <= i; ++v) {
      a[static_cast<std::size_t>(i)] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

// f_{a_1} (x) ... (x) f_{a_d}  <->  Y_1^(a_1) ... Y_d^(a_d).
inline Poly tensor_to_multilinear(const Tensor& t) {
  Poly p;
  for (const auto& [a, c] : t.coords()) {
    std::vector<Monomial::Factor> fs;
    for (std::size_t s = 0; s < a.size(); ++s) fs.emplace_back(VarId::Y(static_cast<int>(s) + 1, a[s]), 1);
    p.add_term(Monomial::from_factors(std::move(fs)), c);
  }
  return p;
}

inline Tensor multilinear_to_tensor(const Poly& p, int k, int d) {
  Tensor t(k, d);
  for (const auto& [m, c] : p.terms()) {
    Coord a(static_cast<std::size_t>(d), -1);
    for (const auto& [v, e] : m.factors()) {
      if (v.family != Family::TensorY || e != 1 || v.major < 1 || v.major > d ||
          a[static_cast<std::size_t>(v.major - 1)] != -1)
        throw Error("not a multilinear Y-polynomial: " + to_string(m));
      a[static_cast<std::size_t>(v.major - 1)] = v.minor;
    }
    for (int x : a)
      if (x < 0) throw Error("missing tensor slot in " + to_string(m));
    t.add(a, c);
  }
  return t;
}

// J^alpha f with f = f_k, expressed in the f basis:
// J^a f_k = k!/(k-a)! f_{k-a}.
inline Tensor jalpha_tensor(const std::vector<int>& alpha, int k) {
  Tensor t(k, static_cast<int>(alpha.size()));
  Coord a;
  Integer c = 1;
  for (int x : alpha) {
    if (x > k) return t;
    c *= falling_factorial(k, x);
    a.push_back(k - x);
  }
  t.add(a, Rational(c));
  return t;
}

// g: J^alpha f -> prod_s Z_s^{k - alpha_s} / (k - alpha_s)!, applied to an
// f-basis tensor; f_j maps to Z^j / k! in each slot.
inline Poly to_harmonic(const Tensor& t) {
  const Rational scale = Rational(1) / Rational(ipow(factorial(static_cast<unsigned long>(t.k())),
                                                    static_cast<unsigned long>(t.d())));
  Poly p;
  for (const auto& [a, c] : t.coords()) {
    std::vector<Monomial::Factor> fs;
    for (std::size_t s = 0; s < a.size(); ++s) fs.emplace_back(VarId::Zv(static_cast<int>(s) + 1), a[s]);
    p.add_term(Monomial::from_factors(std::move(fs)), c * scale);
  }
  return p;
}

// Symmetrization p: reads t as a multilinear Y-polynomial and substitutes
// Y_s^(j) -> X_{assignment[s-1]}^(j).
inline Poly project_to_symmetric(const Tensor& t, const std::vector<int>& assignment) {
  if (static_cast<int>(assignment.size()) != t.d())
    throw IndexOutOfRange("slot assignment has length " + std::to_string(assignment.size()) +
                          ", expected " + std::to_string(t.d()));
  std::map<VarId, Poly> images;
  for (int s = 1; s <= t.d(); ++s)
    for (int j = 0; j <= t.k(); ++j)
      images.emplace(VarId::Y(s, j), Poly::var(VarId::X(assignment[static_cast<std::size_t>(s - 1)], j)));
  return substitute(tensor_to_multilinear(t), images);
}

struct WronskianBasisReport {
  int d = 0;
  std::size_t count = 0;
  std::size_t rank = 0;
  std::size_t invariant_dimension = 0;
  bool all_invariant = false;  // each W_alpha killed by every J^(l)
  bool all_in_span = false;    // each W_alpha in span(invariant_tensor_basis)

  bool pass() const {
    const std::size_t target = factorial(static_cast<unsigned long>(d)).get_ui();
    return all_invariant && all_in_span && count == target && rank == target &&
           invariant_dimension == target;
  }
};

inline WronskianBasisReport verify_wronskian_basis(int d, const Limits& limits = {}) {
  WronskianBasisReport rep;
  rep.d = d;
  const int k = d - 1;
  const auto basis = invariant_tensor_basis(k, d, limits);
  rep.invariant_dimension = basis.size();

  MonomialIndex index;
  Echelon invariant_span;
  auto to_vec = [&](const Tensor& t) { return index.to_vec(tensor_to_multilinear(t)); };
  for (const auto& b : basis) invariant_span.insert(to_vec(b));

  Echelon w_span;
  rep.all_invariant = true;
  rep.all_in_span = true;
  for (const auto& alpha : wronskian_indices(d)) {
    const Tensor w = multilinear_to_tensor(wronskian_W(alpha, d, k), k, d);
    ++rep.count;
    for (int ell = 1; ell <= d; ++ell)
      if (!apply_J_ell(w, ell).is_zero()) rep.all_invariant = false;
    const SparseVec v = to_vec(w);
    if (!invariant_span.contains(v)) rep.all_in_span = false;
    w_span.insert(v);
  }
  rep.rank = w_span.rank();
  return rep;
}

}  // namespace diffhom
