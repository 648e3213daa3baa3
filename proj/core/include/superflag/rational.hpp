#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace superflag {

/// Exact rational scalar. Canonical form (den > 0, gcd(num, den) = 1) is
/// maintained by GMP for all arithmetic results; construction from raw
/// numerator/denominator must go through make_rational.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Parses "n" or "n/d"; throws on malformed input or zero denominator.
Rational parse_rational(const std::string& text);

}  // namespace superflag
