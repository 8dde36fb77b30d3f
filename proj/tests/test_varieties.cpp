#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "mz/error.hpp"
#include "mz/varieties.hpp"

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

VarietySpec affine(std::vector<std::string> vars, std::vector<std::string> eqs, std::vector<std::string> nonzero = {}) {
  return make_variety(std::move(vars), VarietyKind::Affine, eqs, nonzero);
}

VarietySpec projective(std::vector<std::string> vars, std::vector<std::string> eqs = {}) {
  return make_variety(std::move(vars), VarietyKind::Projective, eqs);
}

// Affine Weierstrass points by direct substitution over F.
std::uint64_t brute_force_weierstrass(const WeierstrassCurve& e, const FieldHandle& f) {
  auto c = [&](const Integer& v) { return f.from_int(Integer(v % 1000003).get_si()); };
  std::uint64_t n = 0;
  for (Elem xi = 0; xi < f.q(); ++xi)
    for (Elem yi = 0; yi < f.q(); ++yi) {
      const auto x = f.element(xi), y = f.element(yi);
      const auto lhs = y * y + c(e.a1()) * x * y + c(e.a3()) * y;
      const auto rhs = x * x * x + c(e.a2()) * x * x + c(e.a4()) * x + c(e.a6());
      if (lhs == rhs) ++n;
    }
  return n;
}

}  // namespace

TEST_CASE("polynomial parsing") {
  const std::vector<std::string> vars{"x", "y"};
  const auto p = parse_int_poly("(x+1)^2*y - 3", vars);
  const auto x = IntPoly::variable(2, 0), y = IntPoly::variable(2, 1);
  CHECK(p == pow(x + IntPoly::constant(2, 1), 2) * y - IntPoly::constant(2, 3));
  CHECK(parse_int_poly("x*y - 1", vars).degree() == 2);
  CHECK(parse_int_poly("x^2 + y^2", vars).is_homogeneous());

  try {
    parse_int_poly("x + * y", vars);
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.column() == 5);
  }
  CHECK(kind_of([&] { parse_int_poly("x + z", vars); }) == ErrorKind::UnknownVariable);
  CHECK(kind_of([] { projective({"x", "y"}, {"x^2 + y"}); }) == ErrorKind::InhomogeneousProjective);
}

TEST_CASE("variety JSON round trip") {
  const auto v = affine({"x", "y"}, {"y^2 - x^3 - x"}, {"x"});
  const auto j = variety_to_json(v);
  CHECK(j.at("kind") == "affine");
  const auto back = variety_from_json(j);
  CHECK(back.vars == v.vars);
  CHECK(back.equations == v.equations);
  CHECK(back.nonzero == v.nonzero);
}

TEST_CASE("count_points") {
  CHECK(count_points(affine({"x"}, {"x"}), make_field(7, 1)) == 1);
  CHECK(count_points(affine({"x", "y"}, {}), make_field(3, 1)) == 9);
  CHECK(count_points(projective({"x", "y"}), make_field(2, 2)) == 5);
  CHECK(count_points(projective({"x", "y", "z"}), make_field(3, 1)) == 13);
  CHECK(count_points(affine({"x", "y"}, {"x*y - 1"}), make_field(7, 1)) == 6);
  // conic x^2 + y^2 = z^2 is a P^1
  CHECK(count_points(projective({"x", "y", "z"}, {"x^2 + y^2 - z^2"}), make_field(5, 1)) == 6);
}

TEST_CASE("count_points does not depend on the job count") {
  const auto v = affine({"x", "y", "z"}, {"x^2 + y^2 + z^2 - 1"});
  const auto f = make_field(7, 2);
  const auto serial = count_points(v, f, 1);
  CHECK(count_points(v, f, 3) == serial);
  CHECK(count_points(v, f, 8) == serial);
}

TEST_CASE("count_points is invariant under reordering equations and renaming variables") {
  const auto f = make_field(5, 1);
  const auto a = affine({"x", "y", "z"}, {"x*y - z", "x + y + z - 1"});
  const auto b = affine({"u", "v", "w"}, {"u + v + w - 1", "u*v - w"});
  const auto c = affine({"z", "x", "y"}, {"x + y + z - 1", "x*y - z"});
  CHECK(count_points(a, f) == count_points(b, f));
  CHECK(count_points(a, f) == count_points(c, f));
}

TEST_CASE("count_tower") {
  CHECK(count_tower(projective({"x", "y"}), make_field(2, 1), 3) == std::vector<std::uint64_t>{3, 5, 9});
  CHECK(count_tower(affine({"x"}, {"x"}), make_field(5, 1), 3) == std::vector<std::uint64_t>{1, 1, 1});
  CHECK(count_tower(affine({"x"}, {}), make_field(3, 1), 2) == std::vector<std::uint64_t>{3, 9});
  // over F_4 the tower visits F_16 and F_64
  CHECK(count_tower(projective({"x", "y"}), make_field(2, 2), 3) == std::vector<std::uint64_t>{5, 17, 65});
}

TEST_CASE("enumeration budget") {
  const auto v = affine({"a", "b", "c", "d", "e", "f", "g", "h"}, {});
  CHECK(kind_of([&] { count_points(v, make_field(11, 1)); }) == ErrorKind::TooLarge);
}

TEST_CASE("fiber_partition") {
  const auto f5 = make_field(5, 1);
  const auto hyper = fiber_partition(affine({"x", "y"}, {"x*y - 1"}), "x", f5);
  CHECK(hyper.fibers[0] == 0);
  for (Elem x = 1; x < 5; ++x) CHECK(hyper.fibers[x] == 1);
  CHECK(hyper.total() == 4);

  const auto plane = fiber_partition(affine({"x", "y"}, {}), "x", make_field(3, 1));
  CHECK(std::all_of(plane.fibers.begin(), plane.fibers.end(), [](auto n) { return n == 3; }));
  CHECK(plane.total() == 9);

  const auto parabola = affine({"x", "y"}, {"y^2 - x"});
  CHECK(fiber_partition(parabola, "x", make_field(3, 1)).total() == count_points(parabola, make_field(3, 1)));
  CHECK(kind_of([&] { fiber_partition(parabola, "w", f5); }) == ErrorKind::UnknownVariable);
}

TEST_CASE("fiber sums equal point counts") {
  const std::vector<VarietySpec> specs{
      affine({"x", "y"}, {"x*y - 1"}),
      affine({"x", "y"}, {"y^2 - x^3 - x"}),
      affine({"x", "y", "z"}, {"x^2 + y^2 - z"}, {"x + 1"}),
  };
  for (const auto& v : specs)
    for (auto [p, e] : std::vector<std::pair<int, int>>{{5, 1}, {7, 1}, {3, 2}}) {
      const auto f = make_field(static_cast<std::uint64_t>(p), e);
      for (const auto& coord : v.vars) CHECK(fiber_partition(v, coord, f).total() == count_points(v, f));
    }
}

TEST_CASE("Weierstrass invariants") {
  // y^2 + y = x^3 - x^2 - 10x - 20
  const WeierstrassCurve e(0, -1, 1, -10, -20);
  CHECK(e.discriminant() == -161051);
  CHECK(e.c4() == 496);
  CHECK(e.c6() == 20008);
  CHECK(kind_of([] { WeierstrassCurve(0, 0, 0, 0, 0); }) == ErrorKind::InvalidInput);
}

TEST_CASE("elliptic_counts") {
  const WeierstrassCurve e(0, 0, 0, 1, 0);  // y^2 = x^3 + x
  const auto f5 = make_field(5, 1);
  CHECK(elliptic_counts(e, f5, 1).front() == brute_force_weierstrass(e, f5) + 1);

  const std::vector<WeierstrassCurve> curves{WeierstrassCurve(0, 0, 0, 1, 0), WeierstrassCurve(0, -1, 1, -10, -20),
                                             WeierstrassCurve(0, 0, 1, -1, 0), WeierstrassCurve(1, 2, 3, 4, 5)};
  for (const auto& c : curves) {
    for (std::uint64_t p : {5u, 7u, 13u, 17u}) {
      if (c.discriminant() % Integer(static_cast<unsigned long>(p)) == 0) continue;
      const auto f = make_field(p, 1);
      const auto n = elliptic_counts(c, f, 3);
      CHECK(n[0] == brute_force_weierstrass(c, f) + 1);
      // Hasse bound
      const double ap = static_cast<double>(p + 1) - static_cast<double>(n[0]);
      CHECK(std::abs(ap) <= 2 * std::sqrt(static_cast<double>(p)));
      // N_2 = q^2 + 1 - (a^2 - 2q) from alpha + beta = a, alpha beta = q
      const auto q = static_cast<long long>(p);
      const auto a = static_cast<long long>(ap);
      CHECK(static_cast<long long>(n[1]) == q * q + 1 - (a * a - 2 * q));
      CHECK(static_cast<long long>(n[2]) == q * q * q + 1 - (a * a * a - 3 * q * a));
    }
  }
  CHECK(kind_of([&] { elliptic_counts(e, make_field(3, 1), 1); }) == ErrorKind::SmallCharacteristic);
  CHECK(kind_of([&] { elliptic_counts(WeierstrassCurve(0, -1, 1, -10, -20), make_field(11, 1), 1); }) ==
        ErrorKind::BadReduction);
}

TEST_CASE("kummer_twist_check") {
  const auto r = kummer_twist_check({0, 1}, 2, make_field(5, 1));
  CHECK(r.twisted == std::vector<std::uint64_t>{4, 4});
  CHECK(r.base == 4);
  CHECK(r.identity);

  const auto trivial = kummer_twist_check({1, 0, 1}, 1, make_field(7, 1));
  CHECK(trivial.twisted.size() == 1);
  CHECK(trivial.twisted[0] == trivial.base);
  CHECK(trivial.identity);

  CHECK(kummer_twist_check({1, 0, 1}, 3, make_field(7, 1)).identity);
  CHECK(kind_of([] { kummer_twist_check({0, 1}, 4, make_field(7, 1)); }) == ErrorKind::NotTorsor);
}

TEST_CASE("kummer twists match a direct enumeration") {
  for (std::uint64_t p : {5u, 7u, 13u}) {
    const auto f = make_field(p, 1);
    const auto delta = f.generator();
    for (int n = 1; n <= 6; ++n) {
      if ((p - 1) % static_cast<std::uint64_t>(n)) continue;
      for (const auto& g : std::vector<std::vector<long long>>{{0, 1}, {1, 0, 1}}) {
        std::vector<std::uint64_t> expected(static_cast<std::size_t>(n), 0);
        std::uint64_t base = 0;
        for (Elem yi = 0; yi < f.q(); ++yi) {
          const auto y = f.element(yi);
          auto gy = f.zero();
          for (auto it = g.rbegin(); it != g.rend(); ++it) gy = gy * y + f.from_int(*it);
          if (gy.is_zero()) continue;
          ++base;
          for (int j = 0; j < n; ++j)
            for (Elem xi = 0; xi < f.q(); ++xi)
              if (f.element(xi).pow(static_cast<std::uint64_t>(n)) == delta.pow(static_cast<std::uint64_t>(j)) * gy)
                ++expected[static_cast<std::size_t>(j)];
        }
        const auto r = kummer_twist_check(g, n, f);
        CHECK(r.twisted == expected);
        CHECK(r.base == base);
        CHECK(r.identity);
      }
    }
  }
}
