#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "mz/dirichlet.hpp"
#include "mz/error.hpp"
#include "oracles.hpp"

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

RationalFunctionQ over(const QPoly& den) { return {QPoly{1}, den}; }

DirichletSeries random_series(std::mt19937& rng, int cutoff, bool unit) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
  DirichletSeries f(cutoff);
  for (int n = 1; n <= cutoff; ++n) f[n] = ratio(num(rng), den(rng));
  if (unit) f[1] = 1;
  return f;
}

}  // namespace

TEST_CASE("convolution and inversion") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_series(rng, 40, false);
    const auto g = random_series(rng, 30, false);
    CHECK(dirichlet_mul(f, g) == dirichlet_mul(g, f));
    CHECK(dirichlet_mul(f, g).cutoff() == 30);
    if (f[1] != 0) CHECK(dirichlet_mul(f, dirichlet_inv(f)) == DirichletSeries::identity(40));
  }
  DirichletSeries zero_head(5);
  zero_head[2] = 1;
  CHECK(kind_of([&] { dirichlet_inv(zero_head); }) == ErrorKind::NotInvertible);
}

TEST_CASE("zeta times Moebius is the identity") {
  const int n = 500;
  const auto mu = oracle::mobius(n);
  DirichletSeries m(n);
  for (int k = 1; k <= n; ++k) m[k] = mu[static_cast<std::size_t>(k)];
  CHECK(dirichlet_mul(DirichletSeries::ones(n), m) == DirichletSeries::identity(n));
  CHECK(dirichlet_inv(DirichletSeries::ones(n)) == m);
}

TEST_CASE("from_euler_factor") {
  const auto geometric = from_euler_factor(over(QPoly{1, -1}), 2, 10);
  for (int n = 1; n <= 10; ++n) CHECK(geometric[n] == ((n == 1 || n == 2 || n == 4 || n == 8) ? 1 : 0));

  const auto p1 = from_euler_factor(over(QPoly{1, -3, 2}), 2, 64);
  for (int k = 0, n = 1; n <= 64; ++k, n *= 2) CHECK(p1[n] == (1 << (k + 1)) - 1);
  CHECK(p1[3] == 0);

  CHECK(from_euler_factor(RationalFunctionQ(), 3, 20) == DirichletSeries::identity(20));
  CHECK(from_euler_factor(over(QPoly{1, -1}), 50, 20) == DirichletSeries::identity(20));
}

TEST_CASE("from_euler_factor is a homomorphism") {
  const RationalFunctionQ a(QPoly{1, 2}, QPoly{1, -1, 3});
  const RationalFunctionQ b(QPoly{1, -5}, QPoly{1, 7});
  for (std::int64_t norm : {2, 3, 7}) {
    CHECK(from_euler_factor(a * b, norm, 400) ==
          dirichlet_mul(from_euler_factor(a, norm, 400), from_euler_factor(b, norm, 400)));
    CHECK(dirichlet_inv(from_euler_factor(a, norm, 400)) == from_euler_factor(a.inverse(), norm, 400));
  }
}

TEST_CASE("euler_product") {
  std::vector<EulerFactor> primes;
  for (std::int64_t p : {2, 3, 5, 7}) primes.push_back({p, over(QPoly{1, -1})});
  CHECK(euler_product(primes, 10) == DirichletSeries::ones(10));
  CHECK(euler_product({}, 10) == DirichletSeries::identity(10));

  // two places of norm 2 multiply like their joint factor
  const auto two = euler_product({{2, over(QPoly{1, -1})}, {2, over(QPoly{1, -2})}}, 64);
  CHECK(two == from_euler_factor(over(QPoly{1, -3, 2}), 2, 64));

  // factors past the cutoff contribute nothing
  auto with_large = primes;
  with_large.push_back({101, over(QPoly{1, 4})});
  CHECK(euler_product(with_large, 10) == DirichletSeries::ones(10));

  // ordering does not matter
  std::vector<EulerFactor> mixed{{2, over(QPoly{1, 1, 2})}, {3, RationalFunctionQ(QPoly{1, -2}, QPoly{1, 3})},
                                 {5, over(QPoly{1, -2, 5})}, {2, over(QPoly{1, -1})}};
  const auto forward = euler_product(mixed, 300);
  std::reverse(mixed.begin(), mixed.end());
  CHECK(euler_product(mixed, 300) == forward);
  std::swap(mixed[0], mixed[2]);
  CHECK(euler_product(mixed, 300) == forward);
}

TEST_CASE("solve_shift_equation") {
  CHECK(solve_shift_equation(DirichletSeries::identity(50)) == DirichletSeries::identity(50));

  for (std::int64_t p : {2, 3, 5}) {
    const auto f = from_euler_factor(over(QPoly{1, -1}), p, 200);
    const auto g = solve_shift_equation(f);
    CHECK(g[static_cast<int>(p)] == Rational(p, p - 1));
    CHECK(dirichlet_mul(g, dirichlet_inv(shift_argument(g, 1))) == f);
    CHECK(g == oracle::infinite_shift_product(f));

    // telescoping: g(s) = f(s) ... f(s+8) g(s+9)
    CHECK(dirichlet_mul(oracle::truncated_shift_product(f, 8), shift_argument(g, 9)) == g);

    // the finite products approach g coefficientwise
    const auto far = oracle::truncated_shift_product(f, 30);
    for (int n = 2; n <= 200; ++n) {
      const Rational gap = g[n] - far[n];
      CHECK(std::abs(gap.get_d()) < 1e-8);
    }
  }
  DirichletSeries bad = DirichletSeries::identity(10);
  bad[1] = 2;
  CHECK(kind_of([&] { solve_shift_equation(bad); }) == ErrorKind::BadLeadingCoefficient);
}

TEST_CASE("shift solutions agree with the closed-form product on random input") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_series(rng, 120, true);
    const auto g = solve_shift_equation(f);
    CHECK(g == oracle::infinite_shift_product(f));
    CHECK(dirichlet_mul(g, dirichlet_inv(shift_argument(g, 1))) == f);
  }
}

TEST_CASE("shift solution of a degree two factor") {
  const auto f = from_euler_factor(over(QPoly{1, 1, 2}), 2, 256);
  const auto g = solve_shift_equation(f);
  CHECK(g[2] == -2);
  CHECK(dirichlet_mul(g, dirichlet_inv(shift_argument(g, 1))) == f);
}

TEST_CASE("abscissa_bound") {
  CHECK(abscissa_bound(0, 1) == 1);
  CHECK(abscissa_bound(2, 4) == 2);
  for (int n = 0; n <= 4; ++n) CHECK(abscissa_bound(2 * n, 7) == n + 1);
  CHECK(kind_of([] { abscissa_bound(2, -1); }) == ErrorKind::InvalidInput);
}

TEST_CASE("evaluate") {
  const auto zeta2 = evaluate(DirichletSeries::ones(10000), 2.0);
  CHECK(std::abs(zeta2.value - std::numbers::pi * std::numbers::pi / 6) < 1e-3);
  REQUIRE(zeta2.tail.has_value());
  CHECK(*zeta2.tail >= std::numbers::pi * std::numbers::pi / 6 - zeta2.value);

  CHECK(evaluate(DirichletSeries::identity(100), 0.3).value == 1.0);
  const auto at_zero = evaluate(DirichletSeries::ones(10), 0.0);
  CHECK(at_zero.value == 10.0);
  CHECK_FALSE(at_zero.tail.has_value());
}

TEST_CASE("Dirichlet JSON") {
  DirichletSeries f(6);
  f[1] = 1;
  f[2] = Rational(-1, 2);
  f[6] = 3;
  const auto j = dirichlet_to_json(f);
  CHECK(j.dump() == R"({"a":{"1":"1","2":"-1/2","6":"3"},"cutoff":6})");
  CHECK(dirichlet_from_json(j) == f);
  CHECK(kind_of([] { dirichlet_from_json(nlohmann::json::parse(R"({"cutoff":3,"a":{"4":"1"}})")); }) ==
        ErrorKind::InvalidInput);
}
