#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "json.hpp"

#include "mz/json_util.hpp"
#include "mz/qpoly.hpp"
#include "mz/rational.hpp"
#include "mz/series.hpp"

namespace mz {

/// A squarefree polynomial with constant term 1 and a signed multiplicity.
/// Z contributes poly(t)^{-mult}: positive multiplicities are poles.
struct Atom {
  QPoly poly;
  long mult = 0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Refines atoms into a pairwise coprime, squarefree basis with merged
/// multiplicities; zero multiplicities are dropped and the result is sorted.
std::vector<Atom> coprime_basis(std::vector<Atom> atoms);
/// As coprime_basis, but atoms whose multiplicities cancel to zero are kept.
std::vector<Atom> coprime_refinement(std::vector<Atom> atoms);

/// Polynomial whose inverse roots are the pairwise products of the inverse roots of
/// f and g (both with constant term 1), computed from resultants of the monic
/// reversed polynomials and interpolation.
QPoly composed_product(const QPoly& f, const QPoly& g);

/// A class in K_0 over F_q, stored through the factored form of its Z-function.
class VirtualMotive {
 public:
  explicit VirtualMotive(std::int64_t q);  // zero class
  VirtualMotive(std::int64_t q, std::vector<Atom> atoms);

  /// Z = 1/(1 - t)
  static VirtualMotive point(std::int64_t q);
  /// Z = 1/(1 - q t)
  static VirtualMotive lefschetz(std::int64_t q);

  std::int64_t q() const { return q_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool is_zero() const { return atoms_.empty(); }

  RationalFunctionQ z_function() const;

  /// Same base and equal Z-functions (coprime bases are not unique).
  friend bool operator==(const VirtualMotive& a, const VirtualMotive& b);

 private:
  std::int64_t q_;
  std::vector<Atom> atoms_;
};

/// Throws ZeroConstantTerm.
VirtualMotive from_rational(const RationalFunctionQ& r, std::int64_t q);

VirtualMotive add(const VirtualMotive& m, const VirtualMotive& n);
VirtualMotive negate(const VirtualMotive& m);
/// Odd shifts negate every multiplicity.
VirtualMotive shift(const VirtualMotive& m, int k);
/// Inverse roots scale by q^{-r}.
VirtualMotive tate_twist(const VirtualMotive& m, int r);
VirtualMotive tensor(const VirtualMotive& m, const VirtualMotive& n);
/// Inverse roots gamma -> 1/gamma.
VirtualMotive dual(const VirtualMotive& m);
/// M over F_{q^m} viewed over F_q: Z(t) -> Z(t^m). Throws BaseMismatch when q_M is not an m-th power.
VirtualMotive pushforward_scalars(const VirtualMotive& m, int degree);

/// Degree of the denominator of Z minus the degree of its numerator.
long euler_char(const VirtualMotive& m);

/// prod(alpha)/prod(beta) for Z = prod(1 - alpha t)/prod(1 - beta t).
Rational det_frobenius(const VirtualMotive& m);

struct FunctionalEquationReport {
  long chi = 0;
  Rational det;
  bool holds = false;
};

/// Checks Z(M*, 1/t) = (-t)^chi det^{-1} Z(M, t) as an exact identity of rational functions.
FunctionalEquationReport verify_functional_equation(const VirtualMotive& m);

/// Complex inverse roots of p (constant term nonzero): companion-matrix eigenvalues
/// of the reversed polynomial, each polished by Newton steps in extended precision.
std::vector<std::complex<long double>> inverse_roots(const QPoly& p);

/// weight -> signed number of inverse roots (counted with atom multiplicity).
/// Throws NotWeil when a root is not within relative tol of some q^{w/2} or when an
/// irreducible factor would be split across weights.
std::map<int, long> weight_profile(const VirtualMotive& m, double tol = 1e-9);

/// n-th count attached to Z(M, t) (n >= 1).
Rational sharp_star(const VirtualMotive& m, int n);

/// Ring operations check that bases agree.
void require_same_base(const VirtualMotive& a, const VirtualMotive& b);

/// {"q": 5, "atoms": [{"poly": [1, -1], "mult": 1}, ...]}
nlohmann::json motive_to_json(const VirtualMotive& m);
VirtualMotive motive_from_json(const nlohmann::json& j);

}  // namespace mz
