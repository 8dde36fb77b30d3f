#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace mz {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical "num/den" text, or just "num" when the denominator is 1.
std::string to_string(const Rational& r);

/// Accepts "n", "-n", "n/d"; the result is canonicalized.
Rational parse_rational(std::string_view text);

/// num/den in lowest terms (the two-argument mpq_class constructor does not reduce).
inline Rational ratio(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

Rational rational_pow(const Rational& base, long exponent);

/// Exact integer power; callers keep exponents small.
Integer integer_pow(const Integer& base, unsigned long exponent);

}  // namespace mz
