#include "mz/expr.hpp"

#include <cctype>

#include "mz/error.hpp"
#include "mz/field.hpp"

namespace mz {

namespace {

enum class Tok { Ident, Int, Plus, Minus, Star, Slash, LParen, RParen, LBracket, RBracket, Comma, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1, column = 1;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i + k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    i += n;
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t{Tok::End, "", line, column};
    std::size_t len = 1;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i + len < src.size() && (std::isalnum(static_cast<unsigned char>(src[i + len])) || src[i + len] == '_')) ++len;
      t.kind = Tok::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i + len < src.size() && std::isdigit(static_cast<unsigned char>(src[i + len]))) ++len;
      t.kind = Tok::Int;
    } else {
      switch (c) {
        case '+': t.kind = Tok::Plus; break;
        case '-': t.kind = Tok::Minus; break;
        case '*': t.kind = Tok::Star; break;
        case '/': t.kind = Tok::Slash; break;
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case '[': t.kind = Tok::LBracket; break;
        case ']': t.kind = Tok::RBracket; break;
        case ',': t.kind = Tok::Comma; break;
        default: throw SyntaxError(std::string("unexpected character '") + c + "'", line, column);
      }
    }
    t.text = std::string(src.substr(i, len));
    out.push_back(std::move(t));
    advance(len);
  }
  out.push_back({Tok::End, "", line, column});
  return out;
}

std::string describe(const Token& t) { return t.kind == Tok::End ? "end of input" : "'" + t.text + "'"; }

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Environment& env) : tokens_(std::move(tokens)), env_(env) {}

  ExprPtr parse() {
    auto e = expr();
    if (peek().kind != Tok::End) throw SyntaxError("unexpected " + describe(peek()), peek().line, peek().column);
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  [[noreturn]] void unexpected(const std::string& wanted) const {
    const Token& t = peek();
    // A missing operand at the end is reported at the operator that needs it.
    if (t.kind == Tok::End && pos_ > 0) {
      const Token& prev = tokens_[pos_ - 1];
      throw SyntaxError("expected " + wanted + " after '" + prev.text + "'", prev.line, prev.column);
    }
    throw SyntaxError("expected " + wanted + ", found " + describe(t), t.line, t.column);
  }

  const Token& expect(Tok kind, const std::string& wanted) {
    if (peek().kind != kind) unexpected(wanted);
    return next();
  }

  static std::shared_ptr<Expr> node(Expr::Kind kind, const Token& at, std::vector<ExprPtr> args = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->args = std::move(args);
    e->line = at.line;
    e->column = at.column;
    return e;
  }

  ExprPtr expr() {
    auto lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const Token& op = next();
      auto rhs = term();
      lhs = node(op.kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub, op, {lhs, rhs});
    }
    return lhs;
  }

  ExprPtr term() {
    auto lhs = unary();
    while (peek().kind == Tok::Star) {
      const Token& op = next();
      auto rhs = unary();
      lhs = node(Expr::Kind::Mul, op, {lhs, rhs});
    }
    return lhs;
  }

  ExprPtr unary() {
    if (peek().kind == Tok::Minus) {
      const Token& op = next();
      return node(Expr::Kind::Neg, op, {unary()});
    }
    return primary();
  }

  long integer(bool allow_sign) {
    bool negative = false;
    if (allow_sign && peek().kind == Tok::Minus) {
      next();
      negative = true;
    }
    const Token& t = expect(Tok::Int, "an integer");
    try {
      const long v = std::stol(t.text);
      return negative ? -v : v;
    } catch (const std::out_of_range&) {
      throw SyntaxError("integer " + t.text + " is too large", t.line, t.column);
    }
  }

  Rational rational() {
    bool negative = false;
    if (peek().kind == Tok::Minus) {
      next();
      negative = true;
    }
    const Token& n = expect(Tok::Int, "a rational number");
    Rational r(Integer(n.text));
    if (peek().kind == Tok::Slash) {
      next();
      const Token& d = expect(Tok::Int, "a denominator");
      const Integer den(d.text);
      if (den == 0) throw SyntaxError("zero denominator", d.line, d.column);
      r /= Rational(den);
    }
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }

  QPoly list() {
    const Token& open = expect(Tok::LBracket, "'['");
    std::vector<Rational> coeffs{rational()};
    while (peek().kind == Tok::Comma) {
      next();
      coeffs.push_back(rational());
    }
    expect(Tok::RBracket, "']'");
    QPoly p(std::move(coeffs));
    if (p.constant_term() == 0) throw SyntaxError("polynomial must have a nonzero constant term", open.line, open.column);
    return p;
  }

  ExprPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int: {
        auto e = node(Expr::Kind::Count, t);
        e->value = integer(false);
        return e;
      }
      case Tok::LParen: {
        next();
        auto e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident: break;
      default: unexpected("an operand");
    }
    const Token& id = next();
    if (id.text == "point") return node(Expr::Kind::Point, id);
    if (id.text == "lefschetz") return node(Expr::Kind::Lefschetz, id);
    if (id.text == "dual") {
      expect(Tok::LParen, "'('");
      auto inner = expr();
      expect(Tok::RParen, "')'");
      return node(Expr::Kind::Dual, id, {inner});
    }
    if (id.text == "twist" || id.text == "shift" || id.text == "push") {
      expect(Tok::LParen, "'('");
      auto inner = expr();
      expect(Tok::Comma, "','");
      const bool is_push = id.text == "push";
      const long v = integer(!is_push);
      if (is_push && v < 1) throw SyntaxError("extension degree must be positive", id.line, id.column);
      expect(Tok::RParen, "')'");
      auto e = node(
          id.text == "twist" ? Expr::Kind::Twist : is_push ? Expr::Kind::Push : Expr::Kind::Shift, id, {inner});
      e->value = v;
      return e;
    }
    if (id.text == "rat") {
      expect(Tok::LParen, "'('");
      auto e = node(Expr::Kind::Rat, id);
      e->num = list();
      expect(Tok::Comma, "','");
      e->den = list();
      if (peek().kind == Tok::Comma) {
        next();
        e->q = integer(false);
      }
      expect(Tok::RParen, "')'");
      return e;
    }
    if (!env_.contains(id.text))
      fail(ErrorKind::UnboundIdentifier, "unbound identifier '" + id.text + "' at " + std::to_string(id.line) + ":" +
                                             std::to_string(id.column));
    auto e = node(Expr::Kind::Var, id);
    e->name = id.text;
    return e;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Environment& env_;
};

std::string list_text(const QPoly& p) {
  std::string out = "[";
  for (int i = 0; i <= p.degree(); ++i) {
    if (i) out += ",";
    out += to_string(p.coeff(i));
  }
  return out + "]";
}

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul: return 2;
    case Expr::Kind::Neg: return 3;
    default: return 4;
  }
}

std::string print_at(const Expr& e, int min_prec) {
  std::string out;
  switch (e.kind) {
    case Expr::Kind::Point: out = "point"; break;
    case Expr::Kind::Lefschetz: out = "lefschetz"; break;
    case Expr::Kind::Count: out = std::to_string(e.value); break;
    case Expr::Kind::Var: out = e.name; break;
    case Expr::Kind::Rat:
      out = "rat(" + list_text(e.num) + "," + list_text(e.den) + (e.q ? "," + std::to_string(*e.q) : "") + ")";
      break;
    case Expr::Kind::Add: out = print_at(*e.args[0], 1) + " + " + print_at(*e.args[1], 2); break;
    case Expr::Kind::Sub: out = print_at(*e.args[0], 1) + " - " + print_at(*e.args[1], 2); break;
    case Expr::Kind::Mul: out = print_at(*e.args[0], 2) + " * " + print_at(*e.args[1], 3); break;
    case Expr::Kind::Neg: out = "-" + print_at(*e.args[0], 3); break;
    case Expr::Kind::Dual: out = "dual(" + print_at(*e.args[0], 0) + ")"; break;
    case Expr::Kind::Twist: out = "twist(" + print_at(*e.args[0], 0) + "," + std::to_string(e.value) + ")"; break;
    case Expr::Kind::Shift: out = "shift(" + print_at(*e.args[0], 0) + "," + std::to_string(e.value) + ")"; break;
    case Expr::Kind::Push: out = "push(" + print_at(*e.args[0], 0) + "," + std::to_string(e.value) + ")"; break;
  }
  return precedence(e.kind) < min_prec ? "(" + out + ")" : out;
}

}  // namespace

ExprPtr parse_expr(std::string_view text, const Environment& env) { return Parser(lex(text), env).parse(); }

std::string print_expr(const Expr& e) { return print_at(e, 0); }

VirtualMotive elaborate(const Expr& e, std::int64_t q, const Environment& env) {
  auto at = [&](const std::string& what) {
    return what + " at " + std::to_string(e.line) + ":" + std::to_string(e.column);
  };
  switch (e.kind) {
    case Expr::Kind::Point: return VirtualMotive::point(q);
    case Expr::Kind::Lefschetz: return VirtualMotive::lefschetz(q);
    case Expr::Kind::Count: return VirtualMotive(q, {{QPoly{1, -1}, e.value}});
    case Expr::Kind::Var: {
      const auto it = env.find(e.name);
      if (it == env.end()) fail(ErrorKind::UnboundIdentifier, at("unbound identifier '" + e.name + "'"));
      if (it->second.q() != q)
        fail(ErrorKind::BaseMismatch, at("'" + e.name + "' lives over F_" + std::to_string(it->second.q()) +
                                         ", expression over F_" + std::to_string(q)));
      return it->second;
    }
    case Expr::Kind::Rat:
      if (e.q && *e.q != q)
        fail(ErrorKind::BaseMismatch, at("literal over F_" + std::to_string(*e.q) + " in an expression over F_" +
                                         std::to_string(q)));
      try {
        return from_rational(RationalFunctionQ(e.num.with_unit_constant(), e.den.with_unit_constant()), q);
      } catch (const Error& err) {
        fail(err.kind(), at(err.what()));
      }
    case Expr::Kind::Add: return add(elaborate(*e.args[0], q, env), elaborate(*e.args[1], q, env));
    case Expr::Kind::Sub: return add(elaborate(*e.args[0], q, env), negate(elaborate(*e.args[1], q, env)));
    case Expr::Kind::Mul: return tensor(elaborate(*e.args[0], q, env), elaborate(*e.args[1], q, env));
    case Expr::Kind::Neg: return negate(elaborate(*e.args[0], q, env));
    case Expr::Kind::Dual: return dual(elaborate(*e.args[0], q, env));
    case Expr::Kind::Twist: return tate_twist(elaborate(*e.args[0], q, env), static_cast<int>(e.value));
    case Expr::Kind::Shift: return shift(elaborate(*e.args[0], q, env), static_cast<int>(e.value));
    case Expr::Kind::Push: {
      const auto big = static_cast<std::int64_t>(
          checked_power(static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(e.value)));
      return pushforward_scalars(elaborate(*e.args[0], big, env), static_cast<int>(e.value));
    }
  }
  fail(ErrorKind::InvalidInput, "unknown expression node");
}

std::string print_class(const VirtualMotive& m) {
  if (m.is_zero()) return "0";
  const RationalFunctionQ z = m.z_function();
  return "rat(" + list_text(z.num()) + "," + list_text(z.den()) + "," + std::to_string(m.q()) + ")";
}

}  // namespace mz
