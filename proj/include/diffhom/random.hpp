#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "diffhom/poly.hpp"
#include "diffhom/tensor.hpp"

namespace diffhom {

// Seeded generators for property checks. mt19937_64 output is fixed by the
// standard; ranges are reduced by hand so draws match on every platform.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(rng_() % span);
  }

  bool coin() { return (rng_() & 1u) != 0; }

  // p/q with |p| <= bound, 1 <= q <= bound.
  Rational rational(int bound = 9) {
    return make_rational(uniform(-bound, bound), uniform(1, bound));
  }

  Rational nonzero_rational(int bound = 9) {
    Rational r;
    do r = rational(bound);
    while (r == 0);
    return r;
  }

  Monomial monomial(const std::vector<VarId>& vars, int degree) {
    std::vector<Monomial::Factor> fs;
    for (int i = 0; i < degree; ++i)
      fs.emplace_back(vars[static_cast<std::size_t>(uniform(0, static_cast<int>(vars.size()) - 1))], 1);
    return Monomial::from_factors(std::move(fs));
  }

  // Up to `terms` terms of degree <= max_degree.
  Poly poly(const std::vector<VarId>& vars, int terms, int max_degree) {
    Poly p;
    for (int t = 0; t < terms; ++t) p.add_term(monomial(vars, uniform(0, max_degree)), rational());
    return p;
  }

  // Homogeneous of the given degree.
  Poly homogeneous_poly(const std::vector<VarId>& vars, int terms, int degree) {
    Poly p;
    for (int t = 0; t < terms; ++t) p.add_term(monomial(vars, degree), rational());
    return p;
  }

  Tensor tensor(int k, int d, int terms) {
    Tensor t(k, d);
    for (int i = 0; i < terms; ++i) {
      Coord a;
      for (int s = 0; s < d; ++s) a.push_back(uniform(0, k));
      t.add(a, rational());
    }
    return t;
  }

  // Truncated invertible series: nonzero constant term.
  std::vector<Rational> series(int len) {
    std::vector<Rational> s;
    s.push_back(nonzero_rational());
    for (int i = 1; i < len; ++i) s.push_back(rational());
    return s;
  }

  // L * U with unit diagonals, hence invertible.
  RationalMatrix invertible_matrix(int n) {
    const auto sz = static_cast<std::size_t>(n);
    RationalMatrix l(sz, std::vector<Rational>(sz, Rational(0)));
    RationalMatrix u = l;
    for (std::size_t i = 0; i < sz; ++i) {
      l[i][i] = u[i][i] = 1;
      for (std::size_t j = 0; j < i; ++j) l[i][j] = rational(3);
      for (std::size_t j = i + 1; j < sz; ++j) u[i][j] = rational(3);
    }
    return multiply(l, u);
  }

  static RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
    RationalMatrix r(a.size(), std::vector<Rational>(b.front().size(), Rational(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t k = 0; k < b.size(); ++k)
        if (a[i][k] != 0)
          for (std::size_t j = 0; j < b[k].size(); ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Inverse by Gauss-Jordan; throws on singular input.
inline RationalMatrix inverse(RationalMatrix m) {
  const std::size_t n = m.size();
  RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) throw Error("singular matrix");
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    const Rational s = 1 / m[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace diffhom
