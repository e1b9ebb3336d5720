#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "diffhom/combinatorics.hpp"
#include "diffhom/errors.hpp"
#include "diffhom/limits.hpp"
#include "diffhom/linalg.hpp"
#include "diffhom/poly.hpp"

namespace diffhom {

// Differential polynomials in X_i^(j), 0 <= i <= N, 0 <= j <= k, of degree d.
struct JetContext {
  int N = 1;
  int k = 0;
  int d = 0;

  void validate() const {
    if (N < 1) throw IndexOutOfRange("N must be >= 1, got " + std::to_string(N));
    if (k < 0) throw IndexOutOfRange("k must be >= 0, got " + std::to_string(k));
    if (d < 0) throw IndexOutOfRange("d must be >= 0, got " + std::to_string(d));
  }

  // X_i^(j) in VarId order.
  std::vector<VarId> variables() const {
    std::vector<VarId> vs;
    for (int i = 0; i <= N; ++i)
      for (int j = 0; j <= k; ++j) vs.push_back(VarId::X(i, j));
    return vs;
  }
};

inline Poly lambda_var(int m) { return Poly::var(VarId::L(m)); }

// (alpha X_i)^(j) = sum_s binom(j,s) alpha^(j-s) X_i^(s), written with
// l_m = alpha^(m)(0)/m!, i.e. alpha^(m) = m! l_m.
inline Poly leibniz_image(int i, int j, const JetContext& ctx) {
  if (i < 0 || i > ctx.N || j < 0 || j > ctx.k)
    throw IndexOutOfRange("X" + std::to_string(i) + "^(" + std::to_string(j) +
                          ") outside N=" + std::to_string(ctx.N) + ", k=" + std::to_string(ctx.k));
  Poly r;
  for (int s = 0; s <= j; ++s) {
    const Integer c = binomial(static_cast<unsigned long>(j), static_cast<unsigned long>(s)) *
                      factorial(static_cast<unsigned long>(j - s));
    r.add_term(Monomial::from_factors({{VarId::L(j - s), 1}, {VarId::X(i, s), 1}}), Rational(c));
  }
  return r;
}

namespace detail {

inline void require_jet_variable(VarId v, const JetContext& ctx) {
  if (v.family != Family::JetX || v.major > ctx.N || v.minor > ctx.k) throw UnsupportedVariable(v);
}

// Memoizes powers of Leibniz images so monomials can be acted on repeatedly.
class SeriesAction {
 public:
  explicit SeriesAction(JetContext ctx) : ctx_(ctx) {}

  Poly act(const Monomial& m) {
    Poly r = Poly::constant(1);
    for (const auto& [v, e] : m.factors()) r = r * power(v, e);
    return r;
  }

 private:
  const Poly& power(VarId v, int e) {
    auto key = std::make_pair(v, e);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    require_jet_variable(v, ctx_);
    Poly p = e == 1 ? leibniz_image(v.major, v.minor, ctx_) : power(v, e - 1) * power(v, 1);
    return cache_.emplace(key, std::move(p)).first->second;
  }

  JetContext ctx_;
  std::map<std::pair<VarId, int>, Poly> cache_;
};

}  // namespace detail

// alpha . p: every X_i^(j) replaced by its Leibniz image. The result lives in
// the X and l variables.
inline Poly act_series(const Poly& p, const JetContext& ctx) {
  std::map<VarId, Poly> images;
  for (VarId v : p.variables()) {
    detail::require_jet_variable(v, ctx);
    images.emplace(v, leibniz_image(v.major, v.minor, ctx));
  }
  return substitute(p, images);
}

// alpha . p for a concrete series alpha = sum_m coeffs[m] T^m (truncated).
inline Poly act_numeric(const Poly& p, const std::vector<Rational>& coeffs, const JetContext& ctx) {
  std::map<VarId, Poly> values;
  for (int m = 0; m <= ctx.k; ++m)
    values.emplace(VarId::L(m),
                   Poly::constant(m < static_cast<int>(coeffs.size()) ? coeffs[static_cast<std::size_t>(m)]
                                                                       : Rational(0)));
  return specialize(act_series(p, ctx), values);
}

// Cauchy product of truncated series, kept to `len` coefficients.
inline std::vector<Rational> series_product(const std::vector<Rational>& a,
                                            const std::vector<Rational>& b, std::size_t len) {
  std::vector<Rational> r(len, Rational(0));
  for (std::size_t i = 0; i < a.size() && i < len; ++i)
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) r[i + j] += a[i] * b[j];
  return r;
}

// True iff act_series(p) == l0^d * p as polynomials. Polynomials that are not
// homogeneous of degree d in jet variables are rejected without expansion.
inline bool is_diff_homogeneous(const Poly& p, int d, const JetContext& ctx) {
  if (p.is_zero()) return true;
  if (!p.is_homogeneous() || p.total_degree() != d) return false;
  JetContext wide = ctx;
  for (VarId v : p.variables()) {
    if (v.family != Family::JetX) return false;
    wide.N = std::max(wide.N, v.major);
    wide.k = std::max(wide.k, v.minor);
  }
  return act_series(p, wide) == pow(lambda_var(0), static_cast<unsigned>(d)) * p;
}

inline bool is_diff_homogeneous(const Poly& p, int d) {
  return is_diff_homogeneous(p, d, JetContext{1, 0, d});
}

struct InvariantBasis {
  JetContext context;
  std::vector<Poly> elements;
  std::vector<std::string> provenance;

  std::size_t dimension() const { return elements.size(); }
};

// Two independent ways of writing the invariance conditions:
//  - SeriesAction: coefficients of act_series(P) - l0^d P in the l variables;
//  - Infinitesimal: P killed by the derivations D_m(X^(j)) = j!/(j-m)! X^(j-m),
//    m = 1..k, spanning the Lie algebra of the unipotent part.
enum class KernelRoute { SeriesAction, Infinitesimal };

// Degree-d monomials in the jet variables of ctx, ascending monomial order.
inline std::vector<Monomial> jet_monomials(const JetContext& ctx, const Limits& limits = {}) {
  ctx.validate();
  const auto vars = ctx.variables();
  const Integer count = binomial(vars.size() + static_cast<unsigned long>(ctx.d) - 1,
                                 static_cast<unsigned long>(ctx.d));
  limits.check_monomials(count.fits_ulong_p() ? count.get_ui() : static_cast<std::size_t>(-1),
                         "jet monomials");
  std::vector<Monomial> out;
  for (const auto& ms : multisets(static_cast<int>(vars.size()), ctx.d)) {
    std::vector<Monomial::Factor> fs;
    for (int i : ms) fs.emplace_back(vars[static_cast<std::size_t>(i)], 1);
    out.push_back(Monomial::from_factors(std::move(fs)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Kernel basis of (V_d^(k))^Diff. The conditions preserve both the number of
// X_i factors for each i and the total derivation weight, so the system is
// solved block by block. Within a block, columns are monomials in ascending
// order; each basis element is monic in its leading monomial.
inline InvariantBasis diff_homog_basis(const JetContext& ctx, const Limits& limits = {},
                                       KernelRoute route = KernelRoute::SeriesAction) {
  InvariantBasis basis{ctx, {}, {}};
  const auto monomials = jet_monomials(ctx, limits);

  using BlockKey = std::pair<std::vector<int>, int>;
  std::map<BlockKey, std::vector<Monomial>> blocks;
  for (const auto& m : monomials) {
    BlockKey key{std::vector<int>(static_cast<std::size_t>(ctx.N + 1), 0), 0};
    for (const auto& [v, e] : m.factors()) {
      key.first[static_cast<std::size_t>(v.major)] += e;
      key.second += e * v.minor;
    }
    blocks[key].push_back(m);
  }

  detail::SeriesAction action(ctx);
  const Poly l0d = pow(lambda_var(0), static_cast<unsigned>(ctx.d));
  std::size_t counter = 0;
  for (const auto& [key, cols] : blocks) {
    MonomialIndex row_index;
    std::vector<SparseVec> rows;
    auto add = [&](const Monomial& row_mon, std::size_t col, const Rational& c) {
      const std::size_t r = row_index.id(row_mon);
      if (r == rows.size()) rows.emplace_back();
      rows[r].emplace_back(col, c);
    };
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const Monomial& m = cols[c];
      if (route == KernelRoute::SeriesAction) {
        const Poly residual = action.act(m) - l0d * Poly::term(m, 1);
        for (const auto& [rm, rc] : residual.terms()) add(rm, c, rc);
      } else {
        for (int order = 1; order <= ctx.k; ++order) {
          for (const auto& [v, e] : m.factors()) {
            if (v.minor < order) continue;
            const Monomial lowered =
                *divide(m, Monomial(v)) * Monomial(VarId::X(v.major, v.minor - order));
            add(lowered * Monomial(VarId::L(order)), c,
                Rational(falling_factorial(v.minor, order) * e));
          }
        }
      }
    }
    Echelon echelon;
    for (auto& row : rows) {
      std::map<std::size_t, Rational> merged;
      for (auto& [c, x] : row) merged[c] += x;
      SparseVec clean;
      for (auto& [c, x] : merged)
        if (x != 0) clean.emplace_back(c, x);
      echelon.insert(clean);
    }
    for (const auto& x : echelon.kernel(cols.size())) {
      Poly p;
      for (const auto& [c, v] : x) p.add_term(cols[c], v);
      basis.elements.push_back(std::move(p));
      basis.provenance.push_back("kernel:" + std::to_string(counter++));
    }
  }
  return basis;
}

struct ProductLemmaReport {
  bool p_homogeneous = false;
  bool q_homogeneous = false;
  bool pq_homogeneous = false;

  // pq differentially homogeneous implies both factors are.
  bool consistent() const { return !pq_homogeneous || (p_homogeneous && q_homogeneous); }
};

inline ProductLemmaReport product_lemma_check(const Poly& p, const Poly& q, const JetContext& ctx) {
  ProductLemmaReport r;
  const int dp = p.total_degree();
  const int dq = q.total_degree();
  r.p_homogeneous = is_diff_homogeneous(p, dp, ctx);
  r.q_homogeneous = is_diff_homogeneous(q, dq, ctx);
  r.pq_homogeneous = is_diff_homogeneous(p * q, dp + dq, ctx);
  return r;
}

}  // namespace diffhom
