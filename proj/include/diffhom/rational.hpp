#pragma once

#include <gmpxx.h>

#include <string>

namespace diffhom {

// Exact coefficients. mpq_class keeps values canonical (lowest terms,
// positive denominator, zero as 0/1) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Renders as "p" or "p/q".
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// n! / (n - m)!, zero when m > n.
inline Integer falling_factorial(long n, long m) {
  if (m < 0 || m > n) return 0;
  Integer r = 1;
  for (long i = n - m + 1; i <= n; ++i) r *= i;
  return r;
}

inline Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

}  // namespace diffhom
