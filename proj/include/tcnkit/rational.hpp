#pragma once

#include <gmpxx.h>

#include <string>

#include "tcnkit/geometry.hpp"

namespace tcnkit {

// Exact rational arithmetic. mpq_class keeps values canonical (reduced,
// positive denominator), which is exactly the invariant we need.
using Rational = mpq_class;

// gmpxx has no long long overloads; long is 64-bit on our targets.
inline Rational rat(long long v) { return Rational(static_cast<long>(v)); }
inline Rational rat(long long num, long long den) {
  Rational r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}
inline mpz_class mpz(long long v) { return mpz_class(static_cast<long>(v)); }

inline std::string rational_to_string(const Rational& r) {
  return r.get_str();  // "p" or "p/q"
}

inline Rational rational_from_string(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw input_error("bad rational: " + s);
  r.canonicalize();
  return r;
}

}  // namespace tcnkit
