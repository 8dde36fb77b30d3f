#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mz/qpoly.hpp"
#include "mz/rational.hpp"

namespace mz {

/// Truncated power series sum_{k=0}^{cutoff} c_k t^k over Q. Binary operations
/// truncate to the smaller cutoff; nothing is ever extended past a cutoff.
class PowerSeriesQ {
 public:
  explicit PowerSeriesQ(int cutoff);
  PowerSeriesQ(std::vector<Rational> coeffs);  // cutoff = size - 1

  static PowerSeriesQ one(int cutoff);
  /// Expansion of p through the cutoff.
  static PowerSeriesQ from_poly(const QPoly& p, int cutoff);

  int cutoff() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  Rational& operator[](int k) { return coeffs_[static_cast<std::size_t>(k)]; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  PowerSeriesQ truncated(int cutoff) const;

  /// Multiplicative inverse; requires a nonzero constant term.
  PowerSeriesQ inverse() const;
  /// t·f'(t)/f(t); requires a nonzero constant term.
  PowerSeriesQ log_derivative() const;

  friend PowerSeriesQ operator+(const PowerSeriesQ& a, const PowerSeriesQ& b);
  friend PowerSeriesQ operator*(const PowerSeriesQ& a, const PowerSeriesQ& b);
  friend bool operator==(const PowerSeriesQ& a, const PowerSeriesQ& b) = default;

 private:
  std::vector<Rational> coeffs_;
};

/// Reduced quotient num/den with num(0) = den(0) = 1 and gcd(num, den) = 1.
class RationalFunctionQ {
 public:
  RationalFunctionQ();  // the constant 1
  /// Reduces and normalizes; throws ZeroConstantTerm if either constant term is 0.
  RationalFunctionQ(QPoly num, QPoly den);

  static RationalFunctionQ one() { return {}; }

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  /// deg num - deg den
  int degree() const { return num_.degree() - den_.degree(); }

  PowerSeriesQ series(int cutoff) const;
  /// R(c·t)
  RationalFunctionQ scale_arg(const Rational& c) const;
  /// R(t^m)
  RationalFunctionQ compose_power(int m) const;
  RationalFunctionQ inverse() const { return {den_, num_}; }

  friend RationalFunctionQ operator*(const RationalFunctionQ& a, const RationalFunctionQ& b);
  friend RationalFunctionQ operator/(const RationalFunctionQ& a, const RationalFunctionQ& b);
  friend bool operator==(const RationalFunctionQ& a, const RationalFunctionQ& b) = default;

  std::string to_string(char var = 't') const;

 private:
  QPoly num_;
  QPoly den_;
};

RationalFunctionQ pow(const RationalFunctionQ& r, int n);

/// exp(sum_{n>=1} N_n t^n / n) with cutoff = counts.size().
PowerSeriesQ zeta_series_from_counts(const std::vector<Integer>& counts);
PowerSeriesQ zeta_series_from_counts(const std::vector<std::uint64_t>& counts);

/// N_1..N_n with exp(sum N_k t^k / k) = R + O(t^{n+1}).
std::vector<Rational> series_log_derivative_counts(const RationalFunctionQ& r, int n);

/// P/Q with deg P <= dnum, deg Q <= dden matching s through its whole cutoff.
/// Throws InsufficientTerms when cutoff < dnum + dden + 2, NoFit otherwise.
RationalFunctionQ rational_fit(const PowerSeriesQ& s, int dnum, int dden);

/// Doubles balanced degree bounds starting from (1, 1) until a fit succeeds or the
/// cutoff no longer leaves two surplus terms. Throws NoFit.
RationalFunctionQ rational_fit_auto(const PowerSeriesQ& s);

}  // namespace mz
