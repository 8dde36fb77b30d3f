#include "mz/global.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <thread>

#include "mz/error.hpp"
#include "mz/json_util.hpp"
#include "mz/motive.hpp"

namespace mz {

// ---- places ----

std::string_view tag_name(PlaceTag tag) {
  switch (tag) {
    case PlaceTag::Good: return "good";
    case PlaceTag::MultiplicativeSplit: return "multiplicative_split";
    case PlaceTag::MultiplicativeNonsplit: return "multiplicative_nonsplit";
    case PlaceTag::Other: return "other";
  }
  return "other";
}

PlaceTag parse_tag(std::string_view name) {
  for (auto tag : {PlaceTag::Good, PlaceTag::MultiplicativeSplit, PlaceTag::MultiplicativeNonsplit, PlaceTag::Other})
    if (tag_name(tag) == name) return tag;
  fail(ErrorKind::InvalidInput, "unknown place tag '" + std::string(name) + "'");
}

// ---- Gamma factors ----

GammaDescriptor operator*(GammaDescriptor a, const GammaDescriptor& b) {
  a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
  return a;
}

GammaDescriptor gamma_factor_complex(const HodgeNumbers& hodge) {
  GammaDescriptor d;
  for (const auto& [pq, h] : hodge) {
    if (h < 0) fail(ErrorKind::InvalidInput, "negative Hodge number");
    if (h > 0) d.terms.push_back({GammaKind::Complex, std::min(pq.first, pq.second), static_cast<int>(h)});
  }
  return d;
}

GammaDescriptor gamma_factor_real(const HodgeNumbers& hodge, const std::map<int, std::pair<long, long>>& middle) {
  GammaDescriptor d;
  for (const auto& [n, pm] : middle) {
    if (pm.first < 0 || pm.second < 0) fail(ErrorKind::InvalidInput, "negative Hodge number");
    if (pm.first > 0) d.terms.push_back({GammaKind::Real, n, static_cast<int>(pm.first)});
    if (pm.second > 0) d.terms.push_back({GammaKind::Real, n - 1, static_cast<int>(pm.second)});
  }
  for (const auto& [pq, h] : hodge) {
    if (h < 0) fail(ErrorKind::InvalidInput, "negative Hodge number");
    if (pq.first < pq.second && h > 0) d.terms.push_back({GammaKind::Complex, pq.first, static_cast<int>(h)});
  }
  return d;
}

namespace {

// log|Gamma(x)| and its sign; x must not be a nonpositive integer.
std::pair<double, int> log_gamma(double x) {
  const double lg = std::lgamma(x);
  int sign = 1;
  if (x < 0 && static_cast<long long>(std::floor(x)) % 2 != 0) sign = -1;
  return {lg, sign};
}

bool is_nonpositive_integer(double x) { return x <= 0 && x == std::floor(x); }

}  // namespace

double evaluate_gamma(const GammaDescriptor& d, double s) {
  double log_abs = 0;
  int sign = 1;
  for (const auto& t : d.terms) {
    const double x = s - t.shift;
    double term_log = 0;
    int term_sign = 1;
    if (t.kind == GammaKind::Real) {
      if (is_nonpositive_integer(x / 2)) fail(ErrorKind::PoleHit, "Gamma_R has a pole at " + std::to_string(x));
      auto [lg, sg] = log_gamma(x / 2);
      term_log = -x / 2 * std::log(std::numbers::pi) + lg;
      term_sign = sg;
    } else {
      if (is_nonpositive_integer(x)) fail(ErrorKind::PoleHit, "Gamma_C has a pole at " + std::to_string(x));
      auto [lg, sg] = log_gamma(x);
      term_log = std::log(2.0) - x * std::log(2 * std::numbers::pi) + lg;
      term_sign = sg;
    }
    log_abs += t.exponent * term_log;
    if (term_sign < 0 && t.exponent % 2) sign = -sign;
  }
  return sign * std::exp(log_abs);
}

nlohmann::json gamma_to_json(const GammaDescriptor& d) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : d.terms)
    out.push_back({{"kind", t.kind == GammaKind::Real ? "R" : "C"}, {"shift", t.shift}, {"exponent", t.exponent}});
  return out;
}

GammaDescriptor gamma_from_json(const nlohmann::json& j) {
  try {
    GammaDescriptor d;
    for (const auto& t : j) {
      const auto kind = t.at("kind").get<std::string>();
      if (kind != "R" && kind != "C") fail(ErrorKind::InvalidInput, "Gamma kind must be R or C");
      const int exponent = t.value("exponent", 1);
      if (exponent < 1) fail(ErrorKind::InvalidInput, "Gamma exponents must be positive");
      d.terms.push_back({kind == "R" ? GammaKind::Real : GammaKind::Complex, t.value("shift", 0), exponent});
    }
    return d;
  } catch (const nlohmann::json::exception& ex) {
    fail(ErrorKind::InvalidInput, std::string("malformed Gamma descriptor: ") + ex.what());
  }
}

// ---- global models ----

GlobalModel global_model_from_json(const nlohmann::json& j) {
  try {
    GlobalModel m;
    const auto& base = j.at("base");
    const auto kind = base.at("kind").get<std::string>();
    if (kind == "Q") {
      m.base = BaseKind::Rationals;
    } else if (kind == "Fq_t") {
      m.base = BaseKind::FunctionField;
      m.q = base.at("q").get<std::int64_t>();
      if (m.q < 2) fail(ErrorKind::InvalidInput, "constant field size must be at least 2");
    } else {
      fail(ErrorKind::InvalidInput, "unknown base kind '" + kind + "'");
    }
    for (const auto& p : j.value("places", nlohmann::json::array())) {
      PlaceLocalData place;
      place.norm = p.at("norm").get<std::int64_t>();
      place.degree = p.value("degree", 1);
      place.local_factor = RationalFunctionQ(poly_from_json(p.value("num", nlohmann::json::array({1}))),
                                             poly_from_json(p.value("den", nlohmann::json::array({1}))));
      place.tag = parse_tag(p.value("tag", std::string("good")));
      if (place.norm < 2 || place.degree < 1) fail(ErrorKind::InvalidInput, "place norm and degree must be positive");
      if (m.base == BaseKind::FunctionField && checked_power(static_cast<std::uint64_t>(m.q), place.degree) !=
                                                   static_cast<std::uint64_t>(place.norm))
        fail(ErrorKind::InvalidInput, "place norm " + std::to_string(place.norm) + " is not q^degree");
      m.places.push_back(std::move(place));
    }
    for (const auto& g : j.value("gamma", nlohmann::json::array())) m.gamma.push_back(gamma_from_json(g));
    m.chi = j.value("chi", 0L);
    const auto& disc = j.value("disc", nlohmann::json(1));
    m.disc = disc.is_string() ? Integer(disc.get<std::string>()) : Integer(std::to_string(disc.get<long long>()));
    return m;
  } catch (const nlohmann::json::exception& ex) {
    fail(ErrorKind::InvalidInput, std::string("malformed model JSON: ") + ex.what());
  } catch (const std::invalid_argument&) {
    fail(ErrorKind::InvalidInput, "malformed discriminant");
  }
}

nlohmann::json global_model_to_json(const GlobalModel& m) {
  nlohmann::json j;
  j["base"] = m.base == BaseKind::Rationals ? nlohmann::json{{"kind", "Q"}} : nlohmann::json{{"kind", "Fq_t"}, {"q", m.q}};
  j["places"] = nlohmann::json::array();
  for (const auto& p : m.places)
    j["places"].push_back({{"norm", p.norm},
                           {"degree", p.degree},
                           {"num", poly_to_json(p.local_factor.num())},
                           {"den", poly_to_json(p.local_factor.den())},
                           {"tag", tag_name(p.tag)}});
  j["gamma"] = nlohmann::json::array();
  for (const auto& g : m.gamma) j["gamma"].push_back(gamma_to_json(g));
  j["chi"] = m.chi;
  j["disc"] = rational_to_json(Rational(m.disc));
  return j;
}

DirichletSeries model_series(const GlobalModel& m, int cutoff) {
  std::vector<EulerFactor> factors;
  for (const auto& p : m.places) factors.push_back({p.norm, p.local_factor});
  std::sort(factors.begin(), factors.end(), [](const auto& a, const auto& b) { return a.norm < b.norm; });
  return euler_product(factors, cutoff);
}

// ---- total and nearby factors ----

RationalFunctionQ ltot_from_good_model(const RationalFunctionQ& zeta_v, std::int64_t qv) {
  if (qv < 2) fail(ErrorKind::InvalidInput, "place norm must be at least 2");
  return zeta_v / zeta_v.scale_arg(Rational(1, qv));
}

namespace {

// Cauchy-type bound: all inverse roots of all polynomials have modulus in [lo, hi].
std::pair<double, double> inverse_root_annulus(const std::vector<Atom>& atoms) {
  double lo = 1, hi = 1;
  for (const auto& a : atoms) {
    const int d = a.poly.degree();
    const double lead = std::abs(a.poly.leading().get_d());
    double max_ratio = 0, max_coeff = 0;
    for (int i = 1; i <= d; ++i) max_coeff = std::max(max_coeff, std::abs(a.poly.coeff(i).get_d()));
    for (int i = 0; i < d; ++i) max_ratio = std::max(max_ratio, std::abs(a.poly.coeff(i).get_d()) / lead);
    hi = std::max(hi, 1 + max_ratio);
    lo = std::min(lo, 1 / (1 + max_coeff));
  }
  return {lo, hi};
}

QPoly rescale(const QPoly& p, std::int64_t qv, int k) {
  return p.scale_arg(rational_pow(Rational(Integer(std::to_string(qv))), k));
}

}  // namespace

RationalFunctionQ solve_local_near(const RationalFunctionQ& r, std::int64_t qv) {
  if (qv < 2) fail(ErrorKind::InvalidInput, "place norm must be at least 2");
  std::vector<Atom> basis = coprime_refinement({{r.den(), 1}, {r.num(), -1}});
  if (basis.empty()) return {};

  const auto [lo, hi] = inverse_root_annulus(basis);
  const int span = static_cast<int>(std::ceil(std::log(hi / lo) / std::log(static_cast<double>(qv)))) + 1;

  // Refine until every rescaled atom is either coprime to or equal to every other atom.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < basis.size() && !changed; ++i) {
      for (std::size_t j = 0; j < basis.size() && !changed; ++j) {
        for (int k = 1; k <= span && !changed; ++k) {
          const QPoly moved = rescale(basis[i].poly, qv, k);
          const QPoly g = gcd(moved, basis[j].poly);
          if (g.degree() < 1 || (g == moved && g == basis[j].poly)) continue;
          std::vector<Atom> next = basis;
          next.push_back({g, 0});
          next.push_back({rescale(g, qv, -k), 0});
          basis = coprime_refinement(std::move(next));
          changed = true;
        }
      }
    }
  }

  // Orbits: level(b) = level(a) + k when b = a rescaled by qv^k.
  const std::size_t n = basis.size();
  std::vector<int> orbit(n, -1), level(n, 0);
  int orbits = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (orbit[start] >= 0) continue;
    orbit[start] = orbits;
    std::vector<std::size_t> stack{start};
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < n; ++b) {
        if (orbit[b] >= 0) continue;
        for (int k = -span; k <= span; ++k) {
          if (k == 0 || rescale(basis[a].poly, qv, k) != basis[b].poly) continue;
          orbit[b] = orbits;
          level[b] = level[a] + k;
          stack.push_back(b);
          break;
        }
      }
    }
    ++orbits;
  }

  std::vector<Atom> solution;
  for (int o = 0; o < orbits; ++o) {
    std::map<int, long> by_level;
    std::size_t lowest = n;
    for (std::size_t a = 0; a < n; ++a) {
      if (orbit[a] != o) continue;
      by_level[level[a]] += basis[a].mult;
      if (lowest == n || level[a] < level[lowest]) lowest = a;
    }
    long total = 0;
    for (const auto& [l, mult] : by_level) total += mult;
    if (total != 0)
      fail(ErrorKind::NotSolvable, "inverse roots of " + basis[lowest].poly.to_string('u') +
                                       " form an orbit with net multiplicity " + std::to_string(total));
    // m(level) = sum of multiplicities at this level and above
    long suffix = 0;
    const int bottom = by_level.begin()->first, top = by_level.rbegin()->first;
    for (int l = top; l >= bottom; --l) {
      if (auto it = by_level.find(l); it != by_level.end()) suffix += it->second;
      if (suffix != 0) solution.push_back({rescale(basis[lowest].poly, qv, l - level[lowest]), suffix});
    }
  }

  const RationalFunctionQ s = VirtualMotive(qv, std::move(solution)).z_function();
  if (!(s / s.scale_arg(Rational(1, qv)) == r))
    fail(ErrorKind::NotSolvable, "orbit solution failed verification");
  return s;
}

RationalFunctionQ lnear_good_reduction(const RationalFunctionQ& zeta_v, std::int64_t qv) {
  if (qv < 2) fail(ErrorKind::InvalidInput, "place norm must be at least 2");
  return zeta_v;
}

// ---- elliptic curves over Q ----

namespace {

std::int64_t residue(const Integer& v, std::int64_t p) {
  Integer r = v % Integer(std::to_string(p));
  if (r < 0) r += Integer(std::to_string(p));
  return r.get_si();
}

EllipticPlaceRecord elliptic_place(const WeierstrassCurve& e, std::int64_t p) {
  EllipticPlaceRecord rec;
  rec.p = p;
  rec.place.norm = p;
  rec.place.degree = 1;
  const FieldHandle f = make_field(static_cast<std::uint64_t>(p), 1);
  if (residue(e.discriminant(), p) != 0) {
    rec.count = elliptic_counts(e, f, 1).front();
    rec.a_p = p + 1 - static_cast<std::int64_t>(rec.count);
    rec.place.tag = PlaceTag::Good;
    rec.place.local_factor = RationalFunctionQ(QPoly::constant(1), QPoly{1, -rec.a_p, p});
    rec.provenance = "counted";
    return rec;
  }
  if (residue(e.c4(), p) == 0)
    fail(ErrorKind::AdditiveReduction, "additive reduction at " + std::to_string(p));
  rec.count = count_points(e.affine_variety(), f) + 1;
  const bool split = f.quadratic_character(f.from_integer(residue(-e.c6(), p))) == 1;
  const long sign = split ? 1 : -1;
  rec.a_p = sign;
  rec.place.tag = split ? PlaceTag::MultiplicativeSplit : PlaceTag::MultiplicativeNonsplit;
  rec.place.local_factor = RationalFunctionQ(QPoly::constant(1), QPoly{1, -sign} * QPoly{1, -sign * p});
  rec.provenance = "declared";
  return rec;
}

}  // namespace

EllipticLnear elliptic_global_lnear(const WeierstrassCurve& e, std::int64_t bound, int cutoff, int jobs) {
  if (bound < 2) fail(ErrorKind::InvalidInput, "prime bound must be at least 2");
  std::vector<std::int64_t> primes;
  EllipticLnear out{DirichletSeries(cutoff), {}, {}};
  for (std::int64_t p = 2; p <= bound; ++p) {
    if (!is_prime(static_cast<std::uint64_t>(p))) continue;
    if (p < 5)
      out.skipped.push_back(p);
    else
      primes.push_back(p);
  }

  std::vector<std::optional<EllipticPlaceRecord>> records(primes.size());
  std::vector<std::exception_ptr> errors(primes.size());
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < primes.size(); i += workers) {
          try {
            records[i] = elliptic_place(e, primes[i]);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
  }
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);

  std::vector<EulerFactor> factors;
  for (auto& rec : records) {
    factors.push_back({rec->place.norm, rec->place.local_factor});
    out.ledger.push_back(std::move(*rec));
  }
  out.series = euler_product(factors, cutoff);
  return out;
}

nlohmann::json elliptic_ledger_to_json(const EllipticLnear& result) {
  nlohmann::json ledger = nlohmann::json::array();
  for (const auto& r : result.ledger)
    ledger.push_back({{"p", r.p},
                      {"norm", r.place.norm},
                      {"degree", r.place.degree},
                      {"tag", tag_name(r.place.tag)},
                      {"num", poly_to_json(r.place.local_factor.num())},
                      {"den", poly_to_json(r.place.local_factor.den())},
                      {"a_p", r.a_p},
                      {"count", r.count},
                      {"provenance", r.provenance}});
  return {{"ledger", ledger}, {"skipped", result.skipped}, {"series", dirichlet_to_json(result.series)}};
}

// ---- completed xi ----

XiValue completed_xi(const GlobalModel& m, double s, int cutoff) {
  if (m.base != BaseKind::Rationals) fail(ErrorKind::InvalidInput, "completed xi needs a number-field base");
  XiValue out;
  int weight = 0;
  for (const auto& p : m.places) {
    for (const auto* poly : {&p.local_factor.num(), &p.local_factor.den()}) {
      for (const auto& root : inverse_roots(*poly)) {
        const double w = 2 * std::log(static_cast<double>(std::abs(root))) / std::log(static_cast<double>(p.norm));
        weight = std::max(weight, static_cast<int>(std::ceil(w - 1e-9)));
      }
    }
  }
  out.abscissa = abscissa_bound(weight, 0);
  out.out_of_region = s <= out.abscissa.get_d();

  double gamma = 1;
  for (const auto& g : m.gamma) gamma *= evaluate_gamma(g, s);
  const double disc = std::pow(m.disc.get_d(), s * static_cast<double>(m.chi) / 2);
  out.value = disc * gamma * evaluate(model_series(m, cutoff), s).value;
  return out;
}

// ---- function fields ----

std::uint64_t projective_line_places(std::int64_t q, int degree) {
  if (degree < 1) fail(ErrorKind::InvalidInput, "place degree must be positive");
  // necklace count (1/d) sum_{e | d} mu(e) q^{d/e}, plus the place at infinity in degree 1
  Integer total = 0;
  for (int e = 1; e <= degree; ++e) {
    if (degree % e) continue;
    int mu = 1, rest = e;
    for (int p = 2; p * p <= rest; ++p) {
      if (rest % p) continue;
      rest /= p;
      if (rest % p == 0) mu = 0;
      mu = -mu;
    }
    if (rest > 1) mu = -mu;
    if (mu == 0) continue;
    total += mu * integer_pow(Integer(std::to_string(q)), static_cast<unsigned long>(degree / e));
  }
  total /= degree;
  if (degree == 1) total += 1;
  if (!total.fits_ulong_p()) fail(ErrorKind::TooLarge, "place count overflows");
  return total.get_ui();
}

RationalFunctionQ assemble_ff(const std::vector<PlaceLocalData>& places, std::int64_t q, int max_degree,
                              std::optional<std::pair<int, int>> degree_bounds,
                              const std::vector<std::uint64_t>& expected) {
  if (q < 2) fail(ErrorKind::InvalidInput, "constant field size must be at least 2");
  if (max_degree < 1) fail(ErrorKind::InvalidInput, "degree bound must be positive");
  std::vector<std::uint64_t> have(static_cast<std::size_t>(max_degree), 0);
  PowerSeriesQ product = PowerSeriesQ::one(max_degree);
  for (const auto& p : places) {
    if (p.degree < 1) fail(ErrorKind::InvalidInput, "place degree must be positive");
    if (checked_power(static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(p.degree)) !=
        static_cast<std::uint64_t>(p.norm))
      fail(ErrorKind::InvalidInput, "place norm " + std::to_string(p.norm) + " is not q^" + std::to_string(p.degree));
    if (p.degree > max_degree) continue;
    ++have[static_cast<std::size_t>(p.degree - 1)];
    product = product * p.local_factor.compose_power(p.degree).series(max_degree);
  }
  for (int d = 1; d <= max_degree; ++d) {
    const std::uint64_t want = static_cast<std::size_t>(d - 1) < expected.size()
                                   ? expected[static_cast<std::size_t>(d - 1)]
                                   : projective_line_places(q, d);
    const std::uint64_t got = have[static_cast<std::size_t>(d - 1)];
    if (got < want)
      fail(ErrorKind::MissingPlaces, "degree " + std::to_string(d) + " has " + std::to_string(got) + " of " +
                                         std::to_string(want) + " places");
    if (got > want)
      fail(ErrorKind::InvalidInput, "degree " + std::to_string(d) + " has " + std::to_string(got) +
                                        " places, more than the " + std::to_string(want) + " expected");
  }
  if (degree_bounds) return rational_fit(product, degree_bounds->first, degree_bounds->second);
  return rational_fit_auto(product);
}

FfFunctionalEquation verify_ff_functional_equation(const RationalFunctionQ& lnear, const RationalFunctionQ& lnear_dual,
                                                   std::int64_t q) {
  if (q < 2) fail(ErrorKind::InvalidInput, "constant field size must be at least 2");
  const Rational qr(Integer(std::to_string(q)));
  // Ld(1/(q u)) = (q u)^{b - a} rev(num)(q u) / rev(den)(q u), a = deg num, b = deg den
  const long shift = lnear_dual.den().degree() - lnear_dual.num().degree();
  const QPoly top = lnear_dual.num().reversed().scale_arg(qr) * lnear.den();
  const QPoly bottom = lnear_dual.den().reversed().scale_arg(qr) * lnear.num();
  const QPoly g = gcd(top, bottom);
  const QPoly p = div_exact(top, g), r = div_exact(bottom, g);
  if (p.degree() != 0 || r.degree() != 0)
    fail(ErrorKind::NotMonomialRatio, "quotient " + p.to_string('u') + " / (" + r.to_string('u') +
                                          ") is not a monomial in u");
  return {p.constant_term() / r.constant_term() * rational_pow(qr, shift), shift};
}

// ---- density scan ----

DensityScan density_scan(const VarietySpec& v1, const VarietySpec& v2, std::int64_t bound, long betti, int jobs) {
  if (betti < 1) fail(ErrorKind::InvalidInput, "Betti datum must be positive");
  DensityScan out;
  out.bound = Rational(1, betti * betti);
  for (std::int64_t p = 5; p <= bound; ++p) {
    if (!is_prime(static_cast<std::uint64_t>(p))) continue;
    const FieldHandle f = make_field(static_cast<std::uint64_t>(p), 1);
    out.primes.push_back(p);
    if (count_points(v1, f, jobs) != count_points(v2, f, jobs)) out.differing.push_back(p);
  }
  out.fraction = out.primes.empty() ? Rational(0)
                                    : ratio(static_cast<long>(out.differing.size()),
                                                                 static_cast<long>(out.primes.size()));
  return out;
}

}  // namespace mz
