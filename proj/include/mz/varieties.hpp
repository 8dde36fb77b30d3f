#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "mz/field.hpp"
#include "mz/rational.hpp"

namespace mz {

/// Multivariate polynomial with integer coefficients over a fixed variable list.
/// Terms are keyed by exponent vectors aligned with that list.
class IntPoly {
 public:
  using Exponents = std::vector<int>;

  IntPoly() = default;
  explicit IntPoly(std::size_t nvars) : nvars_(nvars) {}

  static IntPoly constant(std::size_t nvars, const Integer& c);
  static IntPoly variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponents, Integer>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for zero.
  int degree() const;
  bool is_homogeneous() const;

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a);
  friend bool operator==(const IntPoly& a, const IntPoly& b) = default;

  /// Reorders variables: variable i of the result is variable perm[i] of this polynomial.
  IntPoly permute_variables(const std::vector<std::size_t>& perm) const;

  std::string to_string(const std::vector<std::string>& vars) const;

 private:
  void add_term(const Exponents& e, const Integer& c);
  std::size_t nvars_ = 0;
  std::map<Exponents, Integer> terms_;
};

IntPoly pow(const IntPoly& p, unsigned n);

/// Parses "x^2*y - 3", "(x+1)^2*y". Operators: + - * ^ and parentheses; no implicit
/// multiplication. Throws SyntaxError and UnknownVariable.
IntPoly parse_int_poly(std::string_view text, const std::vector<std::string>& vars);

enum class VarietyKind { Affine, Projective };

struct VarietySpec {
  std::vector<std::string> vars;
  VarietyKind kind = VarietyKind::Affine;
  std::vector<IntPoly> equations;
  /// Open conditions: each polynomial must not vanish.
  std::vector<IntPoly> nonzero;

  /// Checks declared variables and (for projective kind) homogeneity.
  /// Throws InhomogeneousProjective, InvalidInput.
  void validate() const;
};

VarietySpec make_variety(std::vector<std::string> vars, VarietyKind kind, const std::vector<std::string>& equations,
                         const std::vector<std::string>& nonzero = {});

/// {"vars":[...], "kind":"affine"|"projective", "eqs":[...], "nonzero":[...]}
VarietySpec variety_from_json(const nlohmann::json& j);
nlohmann::json variety_to_json(const VarietySpec& v);

/// Exact number of F-points. Projective varieties are counted over normalized
/// representatives (first nonzero coordinate equal to 1). The enumeration may be
/// split across `jobs` threads; the result does not depend on it.
/// Throws TooLarge, InhomogeneousProjective.
std::uint64_t count_points(const VarietySpec& v, const FieldHandle& f, int jobs = 1);

/// Entry n-1 is the number of F_{q^n}-points, n = 1..N.
std::vector<std::uint64_t> count_tower(const VarietySpec& v, const FieldHandle& f, int n_max, int jobs = 1);

/// Fiber sizes of the projection to one coordinate of an affine variety, indexed by
/// the base value's element index. Each fiber is counted by specializing the
/// coordinate and enumerating the remaining variables.
struct FiberPartition {
  FieldHandle field;
  std::vector<std::uint64_t> fibers;
  std::uint64_t total() const;
};

FiberPartition fiber_partition(const VarietySpec& v, std::string_view coordinate, const FieldHandle& f);

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
class WeierstrassCurve {
 public:
  WeierstrassCurve(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6);

  const Integer& a1() const { return a1_; }
  const Integer& a2() const { return a2_; }
  const Integer& a3() const { return a3_; }
  const Integer& a4() const { return a4_; }
  const Integer& a6() const { return a6_; }

  Integer b2() const;
  Integer b4() const;
  Integer b6() const;
  Integer b8() const;
  Integer c4() const;
  Integer c6() const;
  Integer discriminant() const;

  /// Affine Weierstrass equation in variables (x, y).
  VarietySpec affine_variety() const;

 private:
  Integer a1_, a2_, a3_, a4_, a6_;
};

/// Projective point counts over F_{q^n}, n = 1..N, using the quadratic character of
/// the completed-square discriminant. Throws SmallCharacteristic, BadReduction.
std::vector<std::uint64_t> elliptic_counts(const WeierstrassCurve& e, const FieldHandle& f, int n_max);

struct KummerTwistReport {
  std::vector<std::uint64_t> twisted;  // |U_j|, j = 0..n-1
  std::uint64_t base = 0;              // |V|
  bool identity = false;               // sum_j |U_j| == n |V|
};

/// U_j = {(x,y) : x^n = delta^j g(y), g(y) != 0} with delta the generator of F*, and
/// V = {y : g(y) != 0}. g is given by ascending integer coefficients. Throws NotTorsor.
KummerTwistReport kummer_twist_check(const std::vector<long long>& g, int n, const FieldHandle& f);

}  // namespace mz
