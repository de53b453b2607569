#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace pathfree {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, unsigned long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Exact value of a binary64 number; no rounding is introduced.
inline Rational exact(double value) { return Rational(value); }

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    b *= b;
    exponent >>= 1U;
  }
  return result;
}

inline Integer floor(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

inline Integer ceil(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

// Smallest binary64 value >= v after `ulps` upward steps; used to widen a
// floating bound before comparing it against an exact rational.
double round_up(double v, int ulps = 4);
double round_down(double v, int ulps = 4);

}  // namespace pathfree
