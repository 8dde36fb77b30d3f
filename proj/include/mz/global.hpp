#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "mz/dirichlet.hpp"
#include "mz/series.hpp"
#include "mz/varieties.hpp"

namespace mz {

enum class PlaceTag { Good, MultiplicativeSplit, MultiplicativeNonsplit, Other };

std::string_view tag_name(PlaceTag tag);
PlaceTag parse_tag(std::string_view name);

/// Local factor of a place in the variable u = N(v)^{-s}.
struct PlaceLocalData {
  std::int64_t norm = 0;
  int degree = 1;
  RationalFunctionQ local_factor;
  PlaceTag tag = PlaceTag::Good;
};

enum class GammaKind { Real, Complex };

/// Gamma_R(s - shift)^exponent or Gamma_C(s - shift)^exponent.
struct GammaTerm {
  GammaKind kind = GammaKind::Real;
  int shift = 0;
  int exponent = 1;

  friend bool operator==(const GammaTerm&, const GammaTerm&) = default;
};

struct GammaDescriptor {
  std::vector<GammaTerm> terms;

  friend GammaDescriptor operator*(GammaDescriptor a, const GammaDescriptor& b);
  friend bool operator==(const GammaDescriptor&, const GammaDescriptor&) = default;
};

using HodgeNumbers = std::map<std::pair<int, int>, long>;

/// prod Gamma_C(s - min(p, q))^{h(p,q)}
GammaDescriptor gamma_factor_complex(const HodgeNumbers& hodge);

/// Real Hodge data: h(p,q) for p < q (entries with p >= q are ignored) and, per n,
/// the dimensions h(n,+), h(n,-) of the eigenspaces on V^{n,n}.
/// prod_n Gamma_R(s-n)^{h(n,+)} Gamma_R(s-n+1)^{h(n,-)} prod_{p<q} Gamma_C(s-p)^{h(p,q)}
GammaDescriptor gamma_factor_real(const HodgeNumbers& hodge, const std::map<int, std::pair<long, long>>& middle);

/// Gamma_R(s) = pi^{-s/2} Gamma(s/2), Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s), through log-gamma.
/// Throws PoleHit.
double evaluate_gamma(const GammaDescriptor& d, double s);

nlohmann::json gamma_to_json(const GammaDescriptor& d);
GammaDescriptor gamma_from_json(const nlohmann::json& j);

enum class BaseKind { Rationals, FunctionField };

struct GlobalModel {
  BaseKind base = BaseKind::Rationals;
  std::int64_t q = 0;  // constant field size for F_q(t)
  std::vector<PlaceLocalData> places;
  std::vector<GammaDescriptor> gamma;
  long chi = 0;
  Integer disc = 1;
};

/// {"base": {"kind": "Q"} | {"kind": "Fq_t", "q": 2}, "places": [{"norm": 5, "degree": 1,
/// "num": [1], "den": [1, -1], "tag": "good"}, ...], "gamma": [[{"kind": "R", "shift": 0,
/// "exponent": 1}], ...], "chi": 0, "disc": 1}
GlobalModel global_model_from_json(const nlohmann::json& j);
nlohmann::json global_model_to_json(const GlobalModel& m);

/// Euler product of the model's places.
DirichletSeries model_series(const GlobalModel& m, int cutoff);

/// zeta_v(u) / zeta_v(u / qv)
RationalFunctionQ ltot_from_good_model(const RationalFunctionQ& zeta_v, std::int64_t qv);

/// The unique rational S with S(u) / S(u / qv) = R(u). Throws NotSolvable when some
/// qv-orbit of inverse roots has nonzero total multiplicity.
RationalFunctionQ solve_local_near(const RationalFunctionQ& r, std::int64_t qv);

/// Nearby factor at a place of good reduction: the local zeta itself.
RationalFunctionQ lnear_good_reduction(const RationalFunctionQ& zeta_v, std::int64_t qv);

struct EllipticPlaceRecord {
  std::int64_t p = 0;
  PlaceLocalData place;
  std::int64_t a_p = 0;
  std::uint64_t count = 0;  // points of the reduction, singular point included
  std::string provenance;   // "counted" for good places, "declared" for multiplicative ones
};

struct EllipticLnear {
  DirichletSeries series;
  std::vector<EllipticPlaceRecord> ledger;
  std::vector<std::int64_t> skipped;
};

/// Nearby L-function of h^1(E) over primes p <= B. Good places get (1 - a_p u + p u^2)^{-1}
/// with a_p from enumeration; multiplicative places get ((1 -+ u)(1 -+ p u))^{-1} by the
/// quadratic character of -c6. Primes 2 and 3 are skipped. Throws AdditiveReduction.
EllipticLnear elliptic_global_lnear(const WeierstrassCurve& e, std::int64_t bound, int cutoff, int jobs = 1);

nlohmann::json elliptic_ledger_to_json(const EllipticLnear& result);

struct XiValue {
  double value = 0;
  bool out_of_region = false;
  Rational abscissa;
};

/// |d|^{s chi / 2} prod Gamma(s) sum_{n <= cutoff} a_n n^{-s}. Number-field base only.
XiValue completed_xi(const GlobalModel& m, double s, int cutoff);

/// Number of places of P^1 over F_q of the given degree.
std::uint64_t projective_line_places(std::int64_t q, int degree);

/// Product of factor(u^deg) over the places, expanded through u^D and fitted to a rational
/// function. `expected` gives the number of places per degree (index d - 1); it defaults to
/// the places of P^1. Throws MissingPlaces, NoFit, InsufficientTerms.
RationalFunctionQ assemble_ff(const std::vector<PlaceLocalData>& places, std::int64_t q, int max_degree,
                              std::optional<std::pair<int, int>> degree_bounds = std::nullopt,
                              const std::vector<std::uint64_t>& expected = {});

struct FfFunctionalEquation {
  Rational c;
  long b = 0;
};

/// Checks Ld(1/(q u)) / L(u) = c u^B. Throws NotMonomialRatio.
FfFunctionalEquation verify_ff_functional_equation(const RationalFunctionQ& lnear, const RationalFunctionQ& lnear_dual,
                                                   std::int64_t q);

struct DensityScan {
  Rational fraction;
  Rational bound;
  std::vector<std::int64_t> primes;
  std::vector<std::int64_t> differing;
};

/// Fraction of primes 5 <= p <= B with |V1(F_p)| != |V2(F_p)|, next to 1/b^2.
DensityScan density_scan(const VarietySpec& v1, const VarietySpec& v2, std::int64_t bound, long betti,
                         int jobs = 1);

}  // namespace mz
