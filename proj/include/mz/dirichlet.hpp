#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"

#include "mz/rational.hpp"
#include "mz/series.hpp"

namespace mz {

/// Formal Dirichlet series sum_{n=1}^{cutoff} a_n n^{-s}, exact over Q.
class DirichletSeries {
 public:
  /// The zero series.
  explicit DirichletSeries(int cutoff);

  /// 1 (a_1 = 1, all others 0).
  static DirichletSeries identity(int cutoff);
  /// Truncated Riemann zeta: every coefficient 1.
  static DirichletSeries ones(int cutoff);

  int cutoff() const { return static_cast<int>(a_.size()) - 1; }
  const Rational& operator[](int n) const { return a_[static_cast<std::size_t>(n)]; }
  Rational& operator[](int n) { return a_[static_cast<std::size_t>(n)]; }

  DirichletSeries truncated(int cutoff) const;

  friend bool operator==(const DirichletSeries&, const DirichletSeries&) = default;

 private:
  std::vector<Rational> a_;  // a_[0] unused, always 0
};

/// Convolution; the result carries the smaller cutoff.
DirichletSeries dirichlet_mul(const DirichletSeries& f, const DirichletSeries& g);
/// Throws NotInvertible when a_1 = 0.
DirichletSeries dirichlet_inv(const DirichletSeries& f);

/// f(s + m): a_n -> a_n n^{-m}.
DirichletSeries shift_argument(const DirichletSeries& f, int m);

/// R(norm^{-s}) with the coefficient of u^k placed at index norm^k.
DirichletSeries from_euler_factor(const RationalFunctionQ& r, std::int64_t norm, int cutoff);

struct EulerFactor {
  std::int64_t norm = 0;
  RationalFunctionQ factor;
};

/// Product of the expanded factors. Factors whose norm exceeds the cutoff are skipped.
DirichletSeries euler_product(const std::vector<EulerFactor>& factors, int cutoff);

/// The g with g(s) = f(s) g(s+1) and g_1 = 1, through f's cutoff. Throws BadLeadingCoefficient
/// unless a_1(f) = 1.
DirichletSeries solve_shift_equation(const DirichletSeries& f);

/// Upper bound w/2 + 1 for the abscissa of absolute convergence of an Euler product
/// whose local inverse roots have weight at most w and whose factors have height at most H.
Rational abscissa_bound(int w, int height);

struct DirichletValue {
  double value = 0;
  /// max|a_n| times an integral bound for sum_{n>N} n^{-s}; present only when s > 1.
  std::optional<double> tail;
};

DirichletValue evaluate(const DirichletSeries& f, double s);

/// {"cutoff": N, "a": {"1": "1", "2": "-1/2", ...}} listing nonzero coefficients only.
nlohmann::json dirichlet_to_json(const DirichletSeries& f);
DirichletSeries dirichlet_from_json(const nlohmann::json& j);

}  // namespace mz
