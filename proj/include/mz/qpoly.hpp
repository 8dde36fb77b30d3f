#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "mz/rational.hpp"

namespace mz {

/// Dense univariate polynomial over Q, coefficients in ascending degree.
/// The coefficient vector never carries trailing zeros; the zero polynomial is empty.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs);
  QPoly(std::initializer_list<long> coeffs);

  static QPoly constant(const Rational& c);
  static QPoly monomial(const Rational& c, int degree);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }

  /// Zero beyond the stored range.
  Rational coeff(int i) const;
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational constant_term() const { return coeff(0); }
  Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

  Rational eval(const Rational& x) const;

  QPoly derivative() const;
  /// p(c·t)
  QPoly scale_arg(const Rational& c) const;
  /// p(t^m)
  QPoly compose_power(int m) const;
  /// t^d·p(1/t) with d = degree().
  QPoly reversed() const;
  /// Divides by the constant term (which must be nonzero).
  QPoly with_unit_constant() const;
  /// Divides by the leading coefficient.
  QPoly monic() const;

  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  QPoly& operator*=(const Rational& c);

  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator-(const QPoly& a);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(QPoly a, const Rational& c) { return a *= c; }
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Strict weak ordering by (degree, coefficients), for canonical sorting.
  friend bool operator<(const QPoly& a, const QPoly& b);

  std::string to_string(char var = 't') const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

QPoly pow(const QPoly& p, unsigned n);

/// Quotient and remainder; throws DivisionByZero on a zero divisor.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);

/// Quotient of an exact division; throws InvalidInput if the remainder is nonzero.
QPoly div_exact(const QPoly& a, const QPoly& b);

/// Greatest common divisor, normalized to constant term 1 when that term is nonzero
/// and to a monic polynomial otherwise. gcd(0, 0) = 0.
QPoly gcd(const QPoly& a, const QPoly& b);

/// Resultant of a and b via the Sylvester determinant.
Rational resultant(const QPoly& a, const QPoly& b);

}  // namespace mz
