#include "doctest.h"

#include <random>

#include "mz/error.hpp"
#include "mz/series.hpp"

using namespace mz;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidInput;
}

QPoly linear(long a) { return QPoly{1, -a}; }

std::vector<Integer> ints(std::initializer_list<long> v) {
  std::vector<Integer> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

// Power sums of inverse roots: counts of prod(1 - a_i t) / prod(1 - b_j t) are sum b_j^n - sum a_i^n.
std::vector<Integer> power_sum_counts(const std::vector<long>& zeros, const std::vector<long>& poles, int n) {
  std::vector<Integer> out;
  for (int k = 1; k <= n; ++k) {
    Integer acc = 0;
    for (long b : poles) acc += integer_pow(Integer(b), static_cast<unsigned long>(k));
    for (long a : zeros) acc -= integer_pow(Integer(a), static_cast<unsigned long>(k));
    out.push_back(acc);
  }
  return out;
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  const QPoly a{1, -3, 2};  // (1 - t)(1 - 2t)
  CHECK(a == linear(1) * linear(2));
  CHECK(div_exact(a, linear(2)) == linear(1));
  CHECK(gcd(a, linear(2) * linear(5)) == linear(2));
  CHECK(a.reversed() == QPoly{2, -3, 1});
  CHECK(a.scale_arg(Rational(1, 2)) == QPoly(std::vector<Rational>{1, Rational(-3, 2), Rational(1, 2)}));
  CHECK(a.compose_power(2) == QPoly{1, 0, -3, 0, 2});
  CHECK(resultant(linear(2).reversed(), linear(3).reversed()) == -1);
  CHECK(resultant(QPoly{-2, 1}, QPoly{-3, 1}) == -1);
  CHECK(resultant(QPoly{-3, 1}, QPoly{-2, 1}) == 1);
  CHECK(resultant(QPoly{-2, 0, 1}, QPoly{0, 1}) == -2);
  CHECK(kind_of([&] { div_exact(a, linear(3)); }) == ErrorKind::InvalidInput);
}

TEST_CASE("zeta_series_from_counts") {
  const auto point = zeta_series_from_counts(ints({1, 1, 1}));
  CHECK(point[0] == 1);
  CHECK(point[1] == 1);
  CHECK(point[2] == 1);

  const auto p1 = zeta_series_from_counts(ints({3, 5, 9}));
  const auto expected = RationalFunctionQ(QPoly{1}, linear(1) * linear(2)).series(3);
  CHECK(p1 == expected);
  CHECK(p1[2] == 7);

  const auto empty = zeta_series_from_counts(std::vector<Integer>{});
  CHECK(empty.cutoff() == 0);
  CHECK(empty[0] == 1);
}

TEST_CASE("zeta_series_from_counts is multiplicative") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> dist(-20, 20);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Integer> c1, c2, sum;
    for (int k = 0; k < 8; ++k) {
      c1.emplace_back(dist(rng));
      c2.emplace_back(dist(rng));
      sum.push_back(c1.back() + c2.back());
    }
    CHECK(zeta_series_from_counts(sum) == zeta_series_from_counts(c1) * zeta_series_from_counts(c2));
  }
}

TEST_CASE("series_log_derivative_counts") {
  const auto geometric = series_log_derivative_counts(RationalFunctionQ(QPoly{1}, linear(3)), 3);
  CHECK(geometric == std::vector<Rational>{3, 9, 27});
  const auto p1 = series_log_derivative_counts(RationalFunctionQ(QPoly{1}, linear(1) * linear(2)), 3);
  CHECK(p1 == std::vector<Rational>{3, 5, 9});
  CHECK(series_log_derivative_counts(RationalFunctionQ(), 4) == std::vector<Rational>(4, Rational(0)));
}

TEST_CASE("rational_fit") {
  const auto ones = PowerSeriesQ(std::vector<Rational>(6, Rational(1)));
  CHECK(rational_fit(ones, 0, 1) == RationalFunctionQ(QPoly{1}, linear(1)));

  const RationalFunctionQ p1(QPoly{1}, linear(1) * linear(2));
  CHECK(rational_fit(p1.series(6), 0, 2) == p1);
  CHECK(rational_fit_auto(p1.series(6)) == p1);

  std::vector<Rational> exp_coeffs;
  Rational fact(1);
  for (int k = 0; k <= 6; ++k) {
    if (k) fact *= k;
    exp_coeffs.push_back(1 / fact);
  }
  CHECK(kind_of([&] { rational_fit(PowerSeriesQ(exp_coeffs), 2, 2); }) == ErrorKind::NoFit);
  CHECK(kind_of([&] { rational_fit(p1.series(3), 0, 2); }) == ErrorKind::InsufficientTerms);
}

TEST_CASE("counts round trip through a fitted zeta function") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> root(-6, 6);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<long> zeros, poles;
    for (int i = 0; i < 2; ++i) zeros.push_back(root(rng));
    for (int i = 0; i < 3; ++i) poles.push_back(root(rng));
    const auto counts = power_sum_counts(zeros, poles, 7);
    const auto fit = rational_fit(zeta_series_from_counts(counts), 2, 3);
    const auto back = series_log_derivative_counts(fit, 7);
    for (std::size_t k = 0; k < counts.size(); ++k) CHECK(back[k] == Rational(counts[k]));
  }
}

TEST_CASE("rational functions normalize") {
  const RationalFunctionQ r(linear(1) * linear(3), linear(1) * linear(2));
  CHECK(r.num() == linear(3));
  CHECK(r.den() == linear(2));
  CHECK(kind_of([] { RationalFunctionQ(QPoly{0, 1}, QPoly{1}); }) == ErrorKind::ZeroConstantTerm);
  CHECK(r * r.inverse() == RationalFunctionQ());
  CHECK(pow(r, -2) == (r * r).inverse());
  CHECK(r.compose_power(2).series(6)[2] == r.series(3)[1]);
}

TEST_CASE("series inversion") {
  const auto s = PowerSeriesQ(std::vector<Rational>{2, 1, 0, 5});
  const auto prod = s * s.inverse();
  CHECK(prod == PowerSeriesQ::one(3));
  CHECK(kind_of([] { PowerSeriesQ(std::vector<Rational>{0, 1}).inverse(); }) == ErrorKind::NotInvertible);
}
