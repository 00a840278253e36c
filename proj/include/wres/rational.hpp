#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wres {

// Exact rational scalar.  Every coefficient in the system lives here;
// no floating point anywhere.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

// Parses "p", "-p" or "p/q".
inline Rational parse_rational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  if (r.get_den() <= 0) throw std::invalid_argument("bad rational: " + s);
  return r;
}

inline Integer factorial(long n) {
  Integer r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

// (-1)!! = 0!! = 1.
inline Integer double_factorial(long n) {
  Integer r = 1;
  for (long i = n; i > 1; i -= 2) r *= i;
  return r;
}

// C(n,k); 0 when k < 0 or k > n.  The b_{n,m} trace constant needs the
// out-of-range convention at small m.
inline Integer binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  Integer r = 1;
  if (k > n - k) k = n - k;
  for (long i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

}  // namespace wres
