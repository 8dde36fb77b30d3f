#include "mz/varieties.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <thread>

#include "mz/error.hpp"

namespace mz {

// ---- IntPoly ----

IntPoly IntPoly::constant(std::size_t nvars, const Integer& c) {
  IntPoly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

IntPoly IntPoly::variable(std::size_t nvars, std::size_t index) {
  IntPoly p(nvars);
  Exponents e(nvars, 0);
  e[index] = 1;
  p.add_term(e, Integer(1));
  return p;
}

void IntPoly::add_term(const Exponents& e, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int IntPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

bool IntPoly::is_homogeneous() const {
  const int d = degree();
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const auto& t) { return std::accumulate(t.first.begin(), t.first.end(), 0) == d; });
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  IntPoly r(std::max(a.nvars_, b.nvars_));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      IntPoly::Exponents e(r.nvars_, 0);
      for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
      for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

IntPoly operator-(const IntPoly& a) {
  IntPoly r(a.nvars_);
  return r -= a;
}

IntPoly IntPoly::permute_variables(const std::vector<std::size_t>& perm) const {
  IntPoly r(perm.size());
  for (const auto& [e, c] : terms_) {
    Exponents ne(perm.size(), 0);
    for (std::size_t i = 0; i < perm.size(); ++i) ne[i] = e[perm[i]];
    r.add_term(ne, c);
  }
  return r;
}

std::string IntPoly::to_string(const std::vector<std::string>& vars) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // highest total degree first
  std::vector<std::pair<Exponents, Integer>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
    return std::accumulate(x.first.begin(), x.first.end(), 0) > std::accumulate(y.first.begin(), y.first.end(), 0);
  });
  for (const auto& [e, c] : sorted) {
    Integer mag = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    std::vector<std::string> factors;
    const bool has_vars = std::any_of(e.begin(), e.end(), [](int k) { return k > 0; });
    if (mag != 1 || !has_vars) factors.push_back(mag.get_str());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      factors.push_back(e[i] == 1 ? vars[i] : vars[i] + "^" + std::to_string(e[i]));
    }
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
  }
  return os.str();
}

IntPoly pow(const IntPoly& p, unsigned n) {
  IntPoly result = IntPoly::constant(p.nvars(), Integer(1));
  for (unsigned i = 0; i < n; ++i) result = result * p;
  return result;
}

// ---- parser ----

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

  IntPoly parse() {
    IntPoly p = expression();
    skip_space();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    throw SyntaxError(msg + " in '" + std::string(text_) + "'", 1, static_cast<int>(pos_) + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  IntPoly expression() {
    IntPoly acc(vars_.size());
    bool first = true;
    for (;;) {
      char c = peek();
      int sign = 1;
      if (c == '+' || c == '-') {
        sign = c == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      IntPoly t = term();
      if (sign < 0)
        acc -= t;
      else
        acc += t;
      first = false;
      c = peek();
      if (c != '+' && c != '-') break;
    }
    return acc;
  }

  IntPoly term() {
    IntPoly acc = power();
    while (peek() == '*') {
      ++pos_;
      acc = acc * power();
    }
    return acc;
  }

  IntPoly power() {
    IntPoly base = primary();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) error("expected exponent");
      const unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > 64) error("exponent too large");
      base = pow(base, static_cast<unsigned>(e));
    }
    return base;
  }

  IntPoly primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      IntPoly inner = expression();
      if (peek() != ')') error("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return IntPoly::constant(vars_.size(), Integer(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      const auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) fail(ErrorKind::UnknownVariable, "undeclared variable '" + name + "'");
      return IntPoly::variable(vars_.size(), static_cast<std::size_t>(it - vars_.begin()));
    }
    if (c == '\0') error("unexpected end of input");
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

IntPoly parse_int_poly(std::string_view text, const std::vector<std::string>& vars) {
  return PolyParser(text, vars).parse();
}

// ---- VarietySpec ----

void VarietySpec::validate() const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) fail(ErrorKind::InvalidInput, "duplicate variable '" + vars[i] + "'");
  auto check = [&](const IntPoly& p) {
    if (p.nvars() != vars.size()) fail(ErrorKind::InvalidInput, "polynomial variable count mismatch");
    if (kind == VarietyKind::Projective && !p.is_homogeneous())
      fail(ErrorKind::InhomogeneousProjective, "projective equation is not homogeneous: " + p.to_string(vars));
  };
  for (const auto& p : equations) check(p);
  for (const auto& p : nonzero) check(p);
  if (kind == VarietyKind::Projective && vars.empty())
    fail(ErrorKind::InvalidInput, "projective variety needs at least one variable");
}

VarietySpec make_variety(std::vector<std::string> vars, VarietyKind kind, const std::vector<std::string>& equations,
                         const std::vector<std::string>& nonzero) {
  VarietySpec v;
  v.vars = std::move(vars);
  v.kind = kind;
  for (const auto& s : equations) v.equations.push_back(parse_int_poly(s, v.vars));
  for (const auto& s : nonzero) v.nonzero.push_back(parse_int_poly(s, v.vars));
  v.validate();
  return v;
}

VarietySpec variety_from_json(const nlohmann::json& j) {
  try {
    std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
    const std::string kind = j.value("kind", "affine");
    VarietyKind k;
    if (kind == "affine")
      k = VarietyKind::Affine;
    else if (kind == "projective")
      k = VarietyKind::Projective;
    else
      fail(ErrorKind::InvalidInput, "unknown variety kind '" + kind + "'");
    const auto eqs = j.value("eqs", std::vector<std::string>{});
    const auto nz = j.value("nonzero", std::vector<std::string>{});
    return make_variety(std::move(vars), k, eqs, nz);
  } catch (const nlohmann::json::exception& ex) {
    fail(ErrorKind::InvalidInput, std::string("malformed variety JSON: ") + ex.what());
  }
}

nlohmann::json variety_to_json(const VarietySpec& v) {
  nlohmann::json j;
  j["vars"] = v.vars;
  j["kind"] = v.kind == VarietyKind::Affine ? "affine" : "projective";
  j["eqs"] = nlohmann::json::array();
  for (const auto& p : v.equations) j["eqs"].push_back(p.to_string(v.vars));
  j["nonzero"] = nlohmann::json::array();
  for (const auto& p : v.nonzero) j["nonzero"].push_back(p.to_string(v.vars));
  return j;
}

// ---- counting ----

namespace {

struct CompiledTerm {
  Elem coeff;
  std::vector<std::pair<std::size_t, std::uint64_t>> powers;  // (variable, exponent), exponent > 0
};

using CompiledPoly = std::vector<CompiledTerm>;

CompiledPoly compile(const IntPoly& p, const FieldHandle& f) {
  CompiledPoly out;
  const Integer pp(f.p());
  for (const auto& [e, c] : p.terms()) {
    Integer r = c % pp;
    if (r < 0) r += pp;
    if (r == 0) continue;
    CompiledTerm t{f.from_integer(r.get_si()), {}};
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) t.powers.emplace_back(i, static_cast<std::uint64_t>(e[i]));
    out.push_back(std::move(t));
  }
  return out;
}

Elem evaluate(const CompiledPoly& poly, const FieldHandle& f, const std::vector<Elem>& pt) {
  Elem acc = 0;
  for (const auto& t : poly) {
    Elem v = t.coeff;
    for (const auto& [var, k] : t.powers) {
      v = f.mul(v, f.pow(pt[var], k));
      if (v == 0) break;
    }
    acc = f.add(acc, v);
  }
  return acc;
}

struct CompiledVariety {
  std::vector<CompiledPoly> equations;
  std::vector<CompiledPoly> nonzero;

  bool contains(const FieldHandle& f, const std::vector<Elem>& pt) const {
    for (const auto& e : equations)
      if (evaluate(e, f, pt) != 0) return false;
    for (const auto& c : nonzero)
      if (evaluate(c, f, pt) == 0) return false;
    return true;
  }
};

CompiledVariety compile(const VarietySpec& v, const FieldHandle& f) {
  CompiledVariety cv;
  for (const auto& e : v.equations) cv.equations.push_back(compile(e, f));
  for (const auto& c : v.nonzero) cv.nonzero.push_back(compile(c, f));
  return cv;
}

// Counts points whose first `fixed.size()` coordinates are given and whose remaining
// coordinates range over F, restricted to linear indices [lo, hi) of the free part.
std::uint64_t count_range(const CompiledVariety& cv, const FieldHandle& f, const std::vector<Elem>& fixed,
                          std::size_t nvars, std::uint64_t lo, std::uint64_t hi) {
  if (lo >= hi) return 0;
  std::vector<Elem> pt(nvars, 0);
  std::copy(fixed.begin(), fixed.end(), pt.begin());
  const std::size_t free_start = fixed.size();
  std::uint64_t idx = lo;
  for (std::size_t i = nvars; i-- > free_start;) {
    pt[i] = static_cast<Elem>(idx % f.q());
    idx /= f.q();
  }
  std::uint64_t count = 0;
  for (std::uint64_t n = lo; n < hi; ++n) {
    if (cv.contains(f, pt)) ++count;
    for (std::size_t i = nvars; i-- > free_start;) {
      if (++pt[i] < f.q()) break;
      pt[i] = 0;
    }
  }
  return count;
}

std::uint64_t count_parallel(const CompiledVariety& cv, const FieldHandle& f, const std::vector<Elem>& fixed,
                             std::size_t nvars, int jobs) {
  const std::uint64_t total = checked_power(f.q(), nvars - fixed.size());
  const auto workers = static_cast<std::uint64_t>(std::max(1, jobs));
  if (workers == 1 || total < 4096) return count_range(cv, f, fixed, nvars, 0, total);
  std::vector<std::uint64_t> partial(workers, 0);
  {
    std::vector<std::jthread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) {
      const std::uint64_t lo = total * w / workers, hi = total * (w + 1) / workers;
      pool.emplace_back([&, w, lo, hi] { partial[w] = count_range(cv, f, fixed, nvars, lo, hi); });
    }
  }
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

void check_budget(const FieldHandle& f, std::size_t dims) {
  if (checked_power(f.q(), dims) > enumeration_cap())
    fail(ErrorKind::TooLarge, std::to_string(f.q()) + "^" + std::to_string(dims) + " points exceed the enumeration cap");
}

}  // namespace

std::uint64_t count_points(const VarietySpec& v, const FieldHandle& f, int jobs) {
  v.validate();
  const std::size_t n = v.vars.size();
  const CompiledVariety cv = compile(v, f);
  if (v.kind == VarietyKind::Affine) {
    check_budget(f, n);
    return count_parallel(cv, f, {}, n, jobs);
  }
  check_budget(f, n - 1);
  std::uint64_t total = 0;
  // representatives (0,...,0,1,*,...,*) with the 1 in position i
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Elem> fixed(i + 1, 0);
    fixed[i] = 1;
    total += count_parallel(cv, f, fixed, n, jobs);
  }
  return total;
}

std::vector<std::uint64_t> count_tower(const VarietySpec& v, const FieldHandle& f, int n_max, int jobs) {
  if (n_max < 0) fail(ErrorKind::InvalidInput, "tower length must be nonnegative");
  std::vector<std::uint64_t> out;
  for (int n = 1; n <= n_max; ++n) out.push_back(count_points(v, extend(f, n).first, jobs));
  return out;
}

std::uint64_t FiberPartition::total() const {
  return std::accumulate(fibers.begin(), fibers.end(), std::uint64_t{0});
}

FiberPartition fiber_partition(const VarietySpec& v, std::string_view coordinate, const FieldHandle& f) {
  v.validate();
  if (v.kind != VarietyKind::Affine) fail(ErrorKind::InvalidInput, "fiber_partition needs an affine variety");
  const auto it = std::find(v.vars.begin(), v.vars.end(), coordinate);
  if (it == v.vars.end()) fail(ErrorKind::UnknownVariable, "unknown coordinate '" + std::string(coordinate) + "'");
  const auto base = static_cast<std::size_t>(it - v.vars.begin());
  const std::size_t rest = v.vars.size() - 1;
  check_budget(f, v.vars.size());

  // Specialize the base coordinate into each term coefficient, then enumerate the rest.
  auto specialize = [&](const IntPoly& p, Elem b) {
    CompiledPoly out;
    for (auto t : compile(p, f)) {
      std::vector<std::pair<std::size_t, std::uint64_t>> powers;
      for (const auto& [var, k] : t.powers) {
        if (var == base)
          t.coeff = f.mul(t.coeff, f.pow(b, k));
        else
          powers.emplace_back(var < base ? var : var - 1, k);
      }
      if (t.coeff == 0) continue;
      t.powers = std::move(powers);
      out.push_back(std::move(t));
    }
    return out;
  };

  FiberPartition result{f, std::vector<std::uint64_t>(f.q(), 0)};
  for (Elem b = 0; b < f.q(); ++b) {
    CompiledVariety fiber;
    for (const auto& e : v.equations) fiber.equations.push_back(specialize(e, b));
    for (const auto& c : v.nonzero) fiber.nonzero.push_back(specialize(c, b));
    result.fibers[b] = count_range(fiber, f, {}, rest, 0, checked_power(f.q(), rest));
  }
  return result;
}

// ---- elliptic curves ----

WeierstrassCurve::WeierstrassCurve(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6)
    : a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)), a4_(std::move(a4)), a6_(std::move(a6)) {
  if (discriminant() == 0) fail(ErrorKind::InvalidInput, "singular Weierstrass equation (discriminant 0)");
}

Integer WeierstrassCurve::b2() const { return Integer(a1_ * a1_ + 4 * a2_); }
Integer WeierstrassCurve::b4() const { return Integer(2 * a4_ + a1_ * a3_); }
Integer WeierstrassCurve::b6() const { return Integer(a3_ * a3_ + 4 * a6_); }
Integer WeierstrassCurve::b8() const {
  return Integer(a1_ * a1_ * a6_ + 4 * a2_ * a6_ - a1_ * a3_ * a4_ + a2_ * a3_ * a3_ - a4_ * a4_);
}
Integer WeierstrassCurve::c4() const {
  const Integer b2v = b2(), b4v = b4();
  return Integer(b2v * b2v - 24 * b4v);
}
Integer WeierstrassCurve::c6() const {
  const Integer b2v = b2(), b4v = b4(), b6v = b6();
  return Integer(-b2v * b2v * b2v + 36 * b2v * b4v - 216 * b6v);
}
Integer WeierstrassCurve::discriminant() const {
  const Integer b2v = b2(), b4v = b4(), b6v = b6(), b8v = b8();
  return Integer(-b2v * b2v * b8v - 8 * b4v * b4v * b4v - 27 * b6v * b6v + 9 * b2v * b4v * b6v);
}

VarietySpec WeierstrassCurve::affine_variety() const {
  const std::vector<std::string> vars{"x", "y"};
  const IntPoly x = IntPoly::variable(2, 0), y = IntPoly::variable(2, 1);
  auto c = [](const Integer& v) { return IntPoly::constant(2, v); };
  VarietySpec v;
  v.vars = vars;
  v.kind = VarietyKind::Affine;
  v.equations.push_back(y * y + c(a1_) * x * y + c(a3_) * y - x * x * x - c(a2_) * x * x - c(a4_) * x - c(a6_));
  return v;
}

std::vector<std::uint64_t> elliptic_counts(const WeierstrassCurve& e, const FieldHandle& f, int n_max) {
  if (f.p() < 5) fail(ErrorKind::SmallCharacteristic, "characteristic 2 and 3 are not supported");
  const Integer disc = e.discriminant();
  if (disc % Integer(f.p()) == 0)
    fail(ErrorKind::BadReduction, "characteristic " + std::to_string(f.p()) + " divides the discriminant");
  std::vector<std::uint64_t> out;
  for (int n = 1; n <= n_max; ++n) {
    const FieldHandle g = extend(f, n).first;
    auto red = [&](const Integer& v) {
      Integer r = v % Integer(g.p());
      if (r < 0) r += g.p();
      return g.from_integer(r.get_si());
    };
    const Elem a1 = red(e.a1()), a2 = red(e.a2()), a3 = red(e.a3()), a4 = red(e.a4()), a6 = red(e.a6());
    const Elem four = g.from_integer(4);
    // (2y + a1 x + a3)^2 = (a1 x + a3)^2 + 4 (x^3 + a2 x^2 + a4 x + a6)
    std::uint64_t count = 1;  // point at infinity
    for (Elem x = 0; x < g.q(); ++x) {
      const Elem lin = g.add(g.mul(a1, x), a3);
      const Elem x2 = g.mul(x, x);
      Elem cubic = g.add(g.add(g.mul(x2, x), g.mul(a2, x2)), g.add(g.mul(a4, x), a6));
      const Elem disc_x = g.add(g.mul(lin, lin), g.mul(four, cubic));
      count += static_cast<std::uint64_t>(1 + g.quadratic_character(disc_x));
    }
    out.push_back(count);
  }
  return out;
}

// ---- twisting ----

KummerTwistReport kummer_twist_check(const std::vector<long long>& g, int n, const FieldHandle& f) {
  if (n < 1) fail(ErrorKind::InvalidInput, "twist order must be positive");
  if ((f.q() - 1) % static_cast<std::uint32_t>(n) != 0)
    fail(ErrorKind::NotTorsor, std::to_string(n) + " does not divide q - 1 = " + std::to_string(f.q() - 1));
  check_budget(f, 2);
  auto eval_g = [&](Elem y) {
    Elem acc = 0;
    for (auto it = g.rbegin(); it != g.rend(); ++it) acc = f.add(f.mul(acc, y), f.from_integer(*it));
    return acc;
  };
  KummerTwistReport report;
  report.twisted.assign(static_cast<std::size_t>(n), 0);
  const Elem delta = f.generator_index();
  for (Elem y = 0; y < f.q(); ++y) {
    const Elem gy = eval_g(y);
    if (gy == 0) continue;
    ++report.base;
    Elem target = gy;
    for (int j = 0; j < n; ++j) {
      for (Elem x = 0; x < f.q(); ++x)
        if (f.pow(x, static_cast<std::uint64_t>(n)) == target) ++report.twisted[static_cast<std::size_t>(j)];
      target = f.mul(target, delta);
    }
  }
  const std::uint64_t sum = std::accumulate(report.twisted.begin(), report.twisted.end(), std::uint64_t{0});
  report.identity = sum == static_cast<std::uint64_t>(n) * report.base;
  return report;
}

}  // namespace mz
