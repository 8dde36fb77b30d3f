#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mz/motive.hpp"
#include "mz/qpoly.hpp"

namespace mz {

/// Named classes available to expressions.
using Environment = std::map<std::string, VirtualMotive>;

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Syntax tree of a motive expression.
///
///   expr    := term (('+' | '-') term)*
///   term    := unary ('*' unary)*
///   unary   := '-' unary | primary
///   primary := 'point' | 'lefschetz' | INT | IDENT | '(' expr ')'
///            | 'dual' '(' expr ')' | 'twist' '(' expr ',' SINT ')'
///            | 'shift' '(' expr ',' SINT ')' | 'push' '(' expr ',' INT ')'
///            | 'rat' '(' list ',' list [',' INT] ')'
///   list    := '[' rational (',' rational)* ']'
///
/// An integer literal n stands for n copies of the point.
struct Expr {
  enum class Kind { Point, Lefschetz, Count, Var, Rat, Add, Sub, Mul, Neg, Dual, Twist, Shift, Push };

  Kind kind = Kind::Point;
  std::vector<ExprPtr> args;
  long value = 0;  // Count, Twist, Shift, Push
  std::string name;
  QPoly num, den;
  std::optional<std::int64_t> q;  // explicit base of a Rat literal
  int line = 1, column = 1;
};

/// Throws SyntaxError (with position) and UnboundIdentifier for names missing from env.
ExprPtr parse_expr(std::string_view text, const Environment& env = {});

/// Canonical text; parse_expr(print_expr(e)) reproduces e up to positions.
std::string print_expr(const Expr& e);

/// Evaluates over F_q. Throws BaseMismatch when a bound class or literal lives over another base.
VirtualMotive elaborate(const Expr& e, std::int64_t q, const Environment& env = {});

/// A parseable expression for the class: a sum of rat(...) literals, or "0".
std::string print_class(const VirtualMotive& m);

}  // namespace mz
