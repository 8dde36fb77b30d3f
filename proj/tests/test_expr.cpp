#include "doctest.h"

#include "mz/error.hpp"
#include "mz/expr.hpp"

using namespace mz;

namespace {

std::pair<int, int> syntax_position(std::string_view text) {
  try {
    parse_expr(text);
  } catch (const SyntaxError& e) {
    return {e.line(), e.column()};
  }
  FAIL("no syntax error");
  return {0, 0};
}

VirtualMotive eval(std::string_view text, std::int64_t q, const Environment& env = {}) {
  return elaborate(*parse_expr(text, env), q, env);
}

}  // namespace

TEST_CASE("parsing") {
  const auto e = parse_expr("point + lefschetz * 2");
  CHECK(e->kind == Expr::Kind::Add);
  CHECK(e->args[1]->kind == Expr::Kind::Mul);
  CHECK(print_expr(*e) == "point + lefschetz * 2");
  CHECK(print_expr(*parse_expr("(point + point) * lefschetz")) == "(point + point) * lefschetz");
  CHECK(print_expr(*parse_expr("point - (point - point)")) == "point - (point - point)");
  CHECK(print_expr(*parse_expr("--point")) == "--point");
  CHECK(parse_expr("twist(point, -2)")->value == -2);
  CHECK(parse_expr("rat([1], [1, -1/2], 3)")->q == 3);
}

TEST_CASE("syntax errors carry positions") {
  CHECK(syntax_position("point + ") == std::pair{1, 7});
  CHECK(syntax_position("point\n  * )") == std::pair{2, 5});
  CHECK(syntax_position("twist(point)") == std::pair{1, 12});
  CHECK(syntax_position("point $") == std::pair{1, 7});
  try {
    parse_expr("X + point");
    FAIL("unbound identifier accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnboundIdentifier);
  }
}

TEST_CASE("print and parse round trip") {
  const Environment env{{"E", VirtualMotive::point(5)}};
  for (const char* text : {"point", "3", "E * dual(E) - lefschetz", "shift(twist(E, 1), -1)", "push(point, 2)",
                           "-(point + lefschetz) * E", "rat([1,-1],[1,-5],5) + point"}) {
    const auto once = print_expr(*parse_expr(text, env));
    CHECK(print_expr(*parse_expr(once, env)) == once);
    CHECK(eval(once, 5, env) == eval(text, 5, env));
  }
}

TEST_CASE("elaboration") {
  CHECK(eval("point * point", 3) == VirtualMotive::point(3));
  CHECK(eval("point + lefschetz", 2) == from_rational({QPoly{1}, QPoly{1, -3, 2}}, 2));
  CHECK(eval("lefschetz - lefschetz", 2).is_zero());
  CHECK(eval("3", 7) == add(VirtualMotive::point(7), add(VirtualMotive::point(7), VirtualMotive::point(7))));
  CHECK(eval("dual(lefschetz)", 4) == tate_twist(VirtualMotive::point(4), 1));
  CHECK(eval("push(point, 2)", 3) == pushforward_scalars(VirtualMotive::point(9), 2));

  const Environment env{{"A", VirtualMotive::point(5)}};
  try {
    eval("A + point", 7, env);
    FAIL("base mismatch accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BaseMismatch);
  }
  try {
    eval("rat([1],[1,-1],5)", 3);
    FAIL("base mismatch accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BaseMismatch);
  }
}

TEST_CASE("printed classes parse back") {
  for (const char* text : {"point + lefschetz", "0 * point", "point * point - lefschetz", "twist(point, 2) - point"}) {
    const auto m = eval(text, 5);
    CHECK(eval(print_class(m), 5) == m);
  }
  CHECK(print_class(VirtualMotive(5)) == "0");
}
