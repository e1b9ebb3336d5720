#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diffhom/combinatorics.hpp"
#include "diffhom/errors.hpp"
#include "diffhom/jet_action.hpp"
#include "diffhom/limits.hpp"
#include "diffhom/linalg.hpp"
#include "diffhom/poly.hpp"
#include "diffhom/tensor.hpp"

namespace diffhom {

// ---------------------------------------------------------------------------
// Model case: tuples alpha in N^d.

struct IndexTuple {
  std::vector<int> alpha;
  int witness = 0;  // largest i (1-based) with alpha_i = 0 whose deletion leaves hat(alpha)_j <= j-1
  int cls = 0;      // last i with alpha_i = 0
};

// Valid deletion witnesses of alpha, ascending (1-based).
inline std::vector<int> sigma_witnesses(const std::vector<int>& alpha) {
  std::vector<int> out;
  const int d = static_cast<int>(alpha.size());
  for (int i = 1; i <= d; ++i) {
    if (alpha[static_cast<std::size_t>(i - 1)] != 0) continue;
    bool ok = true;
    int j = 1;
    for (int s = 1; s <= d && ok; ++s) {
      if (s == i) continue;
      ok = alpha[static_cast<std::size_t>(s - 1)] <= j - 1;
      ++j;
    }
    if (ok) out.push_back(i);
  }
  return out;
}

// Sigma_d, searched in the box {0..d-1}^d (every entry of a member is bounded
// by d-2 after deletion, and the deleted entry is 0). Lexicographic order.
inline std::vector<IndexTuple> enum_sigma_d(int d, const Limits& limits = {}) {
  if (d < 1) throw IndexOutOfRange("Sigma_d needs d >= 1");
  limits.check_enumeration(checked_pow(static_cast<std::size_t>(d), d), "Sigma_d search box");
  std::vector<IndexTuple> out;
  for (auto& a : box_tuples(d, d)) {
    const auto w = sigma_witnesses(a);
    if (w.empty()) continue;
    int cls = 0;
    for (int i = 1; i <= d; ++i)
      if (a[static_cast<std::size_t>(i - 1)] == 0) cls = i;
    out.push_back(IndexTuple{std::move(a), w.back(), cls});
  }
  return out;
}

inline Integer sigma_count_formula(int d) { return factorial(static_cast<unsigned long>(d)) / 2; }

// |Sigma_d^k| = (k-1)! * prod_{i=k-1}^{d-2} i
inline Integer sigma_class_formula(int d, int k) {
  Integer r = factorial(static_cast<unsigned long>(std::max(k - 1, 0)));
  for (int i = k - 1; i <= d - 2; ++i) r *= i;
  return r;
}

// ---------------------------------------------------------------------------
// General case: nested tuples (alpha_0, ..., alpha_N).

struct NestedIndex {
  std::vector<std::vector<int>> uples;  // N+1 strictly increasing tuples, possibly empty
  int witness = -1;  // last i satisfying the existential condition, -1 if none
  int cls = -1;      // last i with alpha_{i,1} = 0, -1 if none

  std::vector<int> lengths() const {
    std::vector<int> r;
    for (const auto& u : uples) r.push_back(static_cast<int>(u.size()));
    return r;
  }

  std::vector<int> flatten() const {
    std::vector<int> r;
    for (const auto& u : uples) r.insert(r.end(), u.begin(), u.end());
    return r;
  }

  bool operator==(const NestedIndex& o) const { return uples == o.uples; }
};

inline std::string to_string(const NestedIndex& idx) {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.uples.size(); ++i) {
    if (i) s += ",";
    s += "(";
    for (std::size_t j = 0; j < idx.uples[i].size(); ++j) s += (j ? "," : "") + std::to_string(idx.uples[i][j]);
    s += ")";
  }
  return s + ")";
}

// Conditions on lengths and strict bounds: every nonempty alpha_i satisfies
// 0 <= alpha_{i,1} < ... < alpha_{i,r_i} < r_0 + ... + r_i, and sum r_i = d.
inline bool satisfies_canonical_conditions(const NestedIndex& idx, int N, int d) {
  if (static_cast<int>(idx.uples.size()) != N + 1) return false;
  int prefix = 0;
  for (const auto& u : idx.uples) {
    prefix += static_cast<int>(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (u[j] < 0 || u[j] >= prefix) return false;
      if (j > 0 && u[j - 1] >= u[j]) return false;
    }
  }
  return prefix == d;
}

// Indices i for which the existential condition holds: alpha_{i,1} = 0,
// alpha_{i,r_i} < R_i - 1 when r_i > 1, and alpha_{j,r_j} < R_j - 1 for every
// nonempty alpha_j with j > i (R_j = r_0 + ... + r_j).
inline std::vector<int> sigma_bar_witnesses(const NestedIndex& idx) {
  std::vector<int> prefix;
  int acc = 0;
  for (const auto& u : idx.uples) prefix.push_back(acc += static_cast<int>(u.size()));
  const int n = static_cast<int>(idx.uples.size());
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    const auto& u = idx.uples[static_cast<std::size_t>(i)];
    if (u.empty() || u.front() != 0) continue;
    if (u.size() > 1 && u.back() >= prefix[static_cast<std::size_t>(i)] - 1) continue;
    bool ok = true;
    for (int j = i + 1; j < n && ok; ++j) {
      const auto& v = idx.uples[static_cast<std::size_t>(j)];
      ok = v.empty() || v.back() < prefix[static_cast<std::size_t>(j)] - 1;
    }
    if (ok) out.push_back(i);
  }
  return out;
}

inline void classify(NestedIndex& idx) {
  const auto w = sigma_bar_witnesses(idx);
  idx.witness = w.empty() ? -1 : w.back();
  idx.cls = -1;
  for (std::size_t i = 0; i < idx.uples.size(); ++i)
    if (!idx.uples[i].empty() && idx.uples[i].front() == 0) idx.cls = static_cast<int>(i);
}

// Sigma-bar_d: compositions (r_0..r_N) of d in decreasing lexicographic
// order (so X_0 comes first), then increasing tuples in lexicographic order
// slot by slot.
inline std::vector<NestedIndex> enum_sigma_bar(int N, int d, const Limits& limits = {}) {
  if (N < 1 || d < 1) throw IndexOutOfRange("Sigma-bar needs N >= 1, d >= 1");
  std::vector<NestedIndex> out;
  std::size_t visited = 0;
  auto comps = compositions(d, N + 1);
  std::reverse(comps.begin(), comps.end());
  for (const auto& r : comps) {
    std::vector<std::vector<std::vector<int>>> choices;
    int prefix = 0;
    for (int ri : r) {
      prefix += ri;
      choices.push_back(subsets_of_size(prefix, ri, 0));
    }
    NestedIndex idx;
    idx.uples.resize(static_cast<std::size_t>(N + 1));
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == choices.size()) {
        limits.check_enumeration(++visited, "Sigma-bar candidates");
        if (sigma_bar_witnesses(idx).empty()) return;
        NestedIndex copy = idx;
        classify(copy);
        out.push_back(std::move(copy));
        return;
      }
      for (const auto& c : choices[i]) {
        idx.uples[i] = c;
        self(self, i + 1);
      }
    };
    rec(rec, 0);
  }
  return out;
}

// Degree one: the N+1 singletons, one X_i each.
inline std::vector<NestedIndex> sigma_bar_degree_one(int N) {
  std::vector<NestedIndex> out;
  for (int i = 0; i <= N; ++i) {
    NestedIndex idx;
    idx.uples.resize(static_cast<std::size_t>(N + 1));
    idx.uples[static_cast<std::size_t>(i)] = {0};
    classify(idx);
    out.push_back(std::move(idx));
  }
  return out;
}

// N(N+1)/2 (N+1)^{d-2} for d >= 2, N+1 for d = 1.
inline Integer sigma_bar_count_formula(int N, int d) {
  if (d == 1) return N + 1;
  return Integer(N) * (N + 1) / 2 * ipow(Integer(N + 1), static_cast<unsigned long>(d - 2));
}

// sum over |m| = d of multinomial(d-2; m - e_j - e_l).
inline Integer multinomial_shift_sum(int N, int d, int j, int l) {
  Integer s = 0;
  for (auto m : compositions(d, N + 1)) {
    --m[static_cast<std::size_t>(j)];
    --m[static_cast<std::size_t>(l)];
    s += multinomial(d - 2, m);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Non-decreasing functions {1..d} -> {0..N} and their fiber counts.

inline std::vector<int> composition_of(const std::vector<int>& f, int N) {
  std::vector<int> m(static_cast<std::size_t>(N + 1), 0);
  for (std::size_t s = 0; s < f.size(); ++s) {
    if (f[s] < 0 || f[s] > N)
      throw InvalidComposition("value " + std::to_string(f[s]) + " outside 0.." + std::to_string(N));
    if (s > 0 && f[s - 1] > f[s]) throw InvalidComposition("function is not non-decreasing");
    ++m[static_cast<std::size_t>(f[s])];
  }
  return m;
}

inline std::vector<int> function_of(const std::vector<int>& m) {
  std::vector<int> f;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < 0) throw InvalidComposition("negative fiber count " + std::to_string(m[i]));
    f.insert(f.end(), static_cast<std::size_t>(m[i]), static_cast<int>(i));
  }
  return f;
}

// sub_{f(m(idx))}(W_alpha): the d x d shifted determinant on the flattened
// index, column s built from the X-coordinates of variable f(s).
inline Poly build_generator(const NestedIndex& idx, int N, int d) {
  if (!satisfies_canonical_conditions(idx, N, d))
    throw InvalidIndex(to_string(idx) + " is not a canonical index for N=" + std::to_string(N) +
                       ", d=" + std::to_string(d));
  const auto f = function_of(idx.lengths());
  return shifted_determinant(idx.flatten(), [&](std::size_t s, int t) { return VarId::X(f[s], t); });
}

// Makes the coefficient of the leading monomial positive.
inline Poly sign_normalized(Poly p) {
  if (!p.is_zero() && p.leading_coefficient() < 0) p = -p;
  return p;
}

struct Generator {
  int degree = 0;
  int order = 0;
  NestedIndex index;
  Poly poly;
};

struct GeneratorFamily {
  int degree = 0;
  std::vector<Generator> generators;
};

struct GeneratorCatalog {
  int N = 1;
  int k = 0;
  std::vector<GeneratorFamily> families;  // degrees 1..k+1

  std::vector<Generator> all() const {
    std::vector<Generator> r;
    for (const auto& f : families) r.insert(r.end(), f.generators.begin(), f.generators.end());
    return r;
  }
};

inline GeneratorFamily build_family(int N, int d, const Limits& limits = {}) {
  GeneratorFamily fam{d, {}};
  for (auto& idx : enum_sigma_bar(N, d, limits)) {
    Poly p = sign_normalized(build_generator(idx, N, d));
    if (p.is_zero()) throw IntegrityError("generator " + to_string(idx) + " vanishes identically");
    const int order = order_of(p);
    fam.generators.push_back(Generator{d, order, std::move(idx), std::move(p)});
  }
  return fam;
}

inline GeneratorCatalog build_catalog(int N, int k, const Limits& limits = {}) {
  if (N < 1 || k < 0) throw IndexOutOfRange("catalog needs N >= 1, k >= 0");
  GeneratorCatalog cat{N, k, {}};
  for (int d = 1; d <= k + 1; ++d) cat.families.push_back(build_family(N, d, limits));
  return cat;
}

// (weight, multiplicity): (1, N+1), then (i, |Sigma-bar_i|) for 2 <= i <= k+1.
inline std::vector<std::pair<int, Integer>> weighted_signature(int N, int k) {
  std::vector<std::pair<int, Integer>> r;
  for (int i = 1; i <= k + 1; ++i) r.emplace_back(i, sigma_bar_count_formula(N, i));
  return r;
}

// ---------------------------------------------------------------------------
// Verifications against the jet-side kernels.

struct QuotientBasisReport {
  int N = 0;
  int d = 0;
  std::size_t full_dimension = 0;  // order <= d-1
  std::size_t low_dimension = 0;   // order <= d-2
  std::size_t generators = 0;
  std::size_t combined_rank = 0;   // rank of low basis together with G_d
  bool generators_invariant = false;
  bool inside_full = false;

  bool independent() const { return combined_rank == low_dimension + generators; }
  bool spans() const { return inside_full && combined_rank == full_dimension; }
  bool pass() const {
    return generators_invariant && independent() && spans() && generators + low_dimension == full_dimension;
  }
};

inline QuotientBasisReport verify_quotient_basis(int N, int d, const Limits& limits = {},
                                                 KernelRoute route = KernelRoute::SeriesAction) {
  QuotientBasisReport rep;
  rep.N = N;
  rep.d = d;
  const auto full = diff_homog_basis(JetContext{N, d - 1, d}, limits, route);
  std::vector<Poly> low;
  if (d >= 2) low = diff_homog_basis(JetContext{N, d - 2, d}, limits, route).elements;
  rep.full_dimension = full.dimension();
  rep.low_dimension = low.size();

  const auto family = build_family(N, d, limits);
  rep.generators = family.generators.size();
  PolySpan full_span;
  for (const auto& p : full.elements) full_span.insert(p);
  PolySpan combined;
  for (const auto& p : low) combined.insert(p);
  rep.generators_invariant = true;
  rep.inside_full = true;
  for (const auto& g : family.generators) {
    if (!is_diff_homogeneous(g.poly, d, JetContext{N, d - 1, d})) rep.generators_invariant = false;
    if (!full_span.contains(g.poly)) rep.inside_full = false;
    combined.insert(g.poly);
  }
  for (const auto& p : low)
    if (!full_span.contains(p)) rep.inside_full = false;
  rep.combined_rank = combined.rank();
  return rep;
}

struct DegreeGeneration {
  int degree = 0;
  std::size_t products = 0;
  std::size_t rank = 0;
  std::size_t dimension = 0;
  bool contained = false;

  bool pass() const { return contained && rank == dimension; }
};

struct FiniteGenerationReport {
  int N = 0;
  int k = 0;
  std::vector<std::size_t> family_sizes;
  std::vector<DegreeGeneration> degrees;

  bool pass() const {
    for (const auto& g : degrees)
      if (!g.pass()) return false;
    return !degrees.empty();
  }
};

// Products of catalog generators with total degree d, as an unordered
// multiset of generators.
inline std::vector<Poly> generator_products(const std::vector<Generator>& gens, int d,
                                            const Limits& limits = {}) {
  std::vector<Poly> out;
  auto rec = [&](auto&& self, std::size_t start, int left, const Poly& acc) -> void {
    if (left == 0) {
      out.push_back(acc);
      limits.check_enumeration(out.size(), "generator products");
      return;
    }
    for (std::size_t g = start; g < gens.size(); ++g)
      if (gens[g].degree <= left) self(self, g, left - gens[g].degree, acc * gens[g].poly);
  };
  rec(rec, 0, d, Poly::constant(1));
  return out;
}

inline FiniteGenerationReport verify_finite_generation(int N, int k, int d_max, const Limits& limits = {},
                                                       KernelRoute route = KernelRoute::SeriesAction) {
  FiniteGenerationReport rep;
  rep.N = N;
  rep.k = k;
  const auto cat = build_catalog(N, k, limits);
  for (const auto& f : cat.families) rep.family_sizes.push_back(f.generators.size());
  const auto gens = cat.all();
  for (int d = 1; d <= d_max; ++d) {
    DegreeGeneration g;
    g.degree = d;
    const auto basis = diff_homog_basis(JetContext{N, k, d}, limits, route);
    g.dimension = basis.dimension();
    PolySpan target;
    for (const auto& p : basis.elements) target.insert(p);
    PolySpan span;
    g.contained = true;
    for (const auto& p : generator_products(gens, d, limits)) {
      ++g.products;
      if (!target.contains(p)) g.contained = false;
      span.insert(p);
    }
    g.rank = span.rank();
    rep.degrees.push_back(g);
  }
  return rep;
}

struct MinimalityDegree {
  int degree = 0;
  std::size_t generators = 0;
  bool top_order = false;       // every degree-i generator has order exactly i-1
  bool independent_mod_low = false;

  bool pass() const { return top_order && independent_mod_low; }
};

struct MinimalityReport {
  int N = 0;
  int k = 0;
  bool orders_bounded = false;  // every generator of degree j has order <= j-1
  std::vector<MinimalityDegree> degrees;

  bool pass() const {
    if (!orders_bounded) return false;
    for (const auto& d : degrees)
      if (!d.pass()) return false;
    return true;
  }
};

// A product of >= 2 generators with degrees summing to i has order <= i-2 as
// soon as each factor of degree j has order <= j-1. So a degree-i generator
// is redundant only if it is dependent modulo the order <= i-2 invariants.
inline MinimalityReport verify_minimality(int N, int k, const Limits& limits = {},
                                          KernelRoute route = KernelRoute::SeriesAction) {
  MinimalityReport rep;
  rep.N = N;
  rep.k = k;
  const auto cat = build_catalog(N, k, limits);
  rep.orders_bounded = true;
  for (const auto& f : cat.families)
    for (const auto& g : f.generators)
      if (g.order > g.degree - 1) rep.orders_bounded = false;
  for (int i = 2; i <= k + 1; ++i) {
    MinimalityDegree m;
    m.degree = i;
    const auto& fam = cat.families[static_cast<std::size_t>(i - 1)];
    m.generators = fam.generators.size();
    m.top_order = true;
    for (const auto& g : fam.generators)
      if (g.order != i - 1) m.top_order = false;
    m.independent_mod_low = verify_quotient_basis(N, i, limits, route).independent();
    rep.degrees.push_back(m);
  }
  return rep;
}

}  // namespace diffhom
