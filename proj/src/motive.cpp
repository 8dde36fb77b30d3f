#include "mz/motive.hpp"

#include <algorithm>
#include <limits>

#include "mz/error.hpp"

namespace mz {

namespace {

std::vector<Atom> refine(std::vector<Atom> atoms, bool keep_zero) {
  std::vector<Atom> basis;
  std::vector<Atom> work;
  for (auto& a : atoms) {
    if ((a.mult == 0 && !keep_zero) || a.poly.degree() < 1) continue;
    work.push_back({a.poly.with_unit_constant(), a.mult});
  }
  while (!work.empty()) {
    Atom a = std::move(work.back());
    work.pop_back();
    if (a.poly.degree() < 1) continue;

    const QPoly repeated = gcd(a.poly, a.poly.derivative());
    if (repeated.degree() > 0) {
      work.push_back({repeated, a.mult});
      work.push_back({div_exact(a.poly, repeated), a.mult});
      continue;
    }

    bool absorbed = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const QPoly g = gcd(a.poly, basis[i].poly);
      if (g.degree() < 1) continue;
      absorbed = true;
      if (g == a.poly && g == basis[i].poly) {
        basis[i].mult += a.mult;
        break;
      }
      Atom b = std::move(basis[i]);
      basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
      work.push_back({g, b.mult});
      work.push_back({div_exact(b.poly, g), b.mult});
      work.push_back({g, a.mult});
      work.push_back({div_exact(a.poly, g), a.mult});
      break;
    }
    if (!absorbed) basis.push_back(std::move(a));
  }
  if (!keep_zero) std::erase_if(basis, [](const Atom& a) { return a.mult == 0; });
  std::sort(basis.begin(), basis.end(), [](const Atom& x, const Atom& y) { return x.poly < y.poly; });
  return basis;
}

}  // namespace

std::vector<Atom> coprime_basis(std::vector<Atom> atoms) { return refine(std::move(atoms), false); }

std::vector<Atom> coprime_refinement(std::vector<Atom> atoms) { return refine(std::move(atoms), true); }

QPoly composed_product(const QPoly& f, const QPoly& g) {
  const int d1 = f.degree(), d2 = g.degree();
  if (d1 < 1) return g;
  if (d2 < 1) return f;
  const QPoly big_f = f.with_unit_constant().reversed();  // monic, roots = inverse roots of f
  const QPoly big_g = g.with_unit_constant().reversed();
  const int d = d1 * d2;

  // H(x) = Res_y(F(y), y^{d2} G(x/y)) = prod_{i,j} (x - gamma_i delta_j), sampled at x = 0..d
  std::vector<Rational> xs, ys;
  for (int k = 0; k <= d; ++k) {
    const Rational x0(k);
    std::vector<Rational> c(static_cast<std::size_t>(d2) + 1, Rational(0));
    Rational xp(1);
    for (int j = 0; j <= d2; ++j) {
      c[static_cast<std::size_t>(d2 - j)] = big_g.coeff(j) * xp;
      xp *= x0;
    }
    xs.push_back(x0);
    ys.push_back(resultant(big_f, QPoly(std::move(c))));
  }

  // Newton divided differences, then expand to the monomial basis
  std::vector<Rational> dd = ys;
  for (int level = 1; level <= d; ++level)
    for (int i = d; i >= level; --i)
      dd[static_cast<std::size_t>(i)] = (dd[static_cast<std::size_t>(i)] - dd[static_cast<std::size_t>(i - 1)]) /
                                        (xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(i - level)]);
  QPoly h = QPoly::constant(dd[static_cast<std::size_t>(d)]);
  for (int i = d - 1; i >= 0; --i) h = h * QPoly(std::vector<Rational>{-xs[static_cast<std::size_t>(i)], Rational(1)}) + QPoly::constant(dd[static_cast<std::size_t>(i)]);
  if (h.degree() != d || h.leading() != 1) fail(ErrorKind::InvalidInput, "composed product interpolation failed");
  return h.reversed();
}

// ---- VirtualMotive ----

VirtualMotive::VirtualMotive(std::int64_t q) : q_(q) {
  if (q < 2) fail(ErrorKind::InvalidInput, "base cardinality must be at least 2");
}

VirtualMotive::VirtualMotive(std::int64_t q, std::vector<Atom> atoms) : VirtualMotive(q) {
  atoms_ = coprime_basis(std::move(atoms));
}

VirtualMotive VirtualMotive::point(std::int64_t q) { return {q, {{QPoly{1, -1}, 1}}}; }

VirtualMotive VirtualMotive::lefschetz(std::int64_t q) { return {q, {{QPoly{1, -q}, 1}}}; }

RationalFunctionQ VirtualMotive::z_function() const {
  QPoly num = QPoly::constant(1), den = QPoly::constant(1);
  for (const auto& a : atoms_) {
    if (a.mult > 0)
      den = den * pow(a.poly, static_cast<unsigned>(a.mult));
    else
      num = num * pow(a.poly, static_cast<unsigned>(-a.mult));
  }
  return {num, den};
}

bool operator==(const VirtualMotive& a, const VirtualMotive& b) {
  return a.q_ == b.q_ && (a.atoms_ == b.atoms_ || a.z_function() == b.z_function());
}

void require_same_base(const VirtualMotive& a, const VirtualMotive& b) {
  if (a.q() != b.q())
    fail(ErrorKind::BaseMismatch, "classes over F_" + std::to_string(a.q()) + " and F_" + std::to_string(b.q()));
}

VirtualMotive from_rational(const RationalFunctionQ& r, std::int64_t q) {
  std::vector<Atom> atoms;
  if (r.den().degree() > 0) atoms.push_back({r.den(), 1});
  if (r.num().degree() > 0) atoms.push_back({r.num(), -1});
  return {q, std::move(atoms)};
}

VirtualMotive add(const VirtualMotive& m, const VirtualMotive& n) {
  require_same_base(m, n);
  std::vector<Atom> atoms = m.atoms();
  atoms.insert(atoms.end(), n.atoms().begin(), n.atoms().end());
  return {m.q(), std::move(atoms)};
}

VirtualMotive negate(const VirtualMotive& m) {
  std::vector<Atom> atoms = m.atoms();
  for (auto& a : atoms) a.mult = -a.mult;
  return {m.q(), std::move(atoms)};
}

VirtualMotive shift(const VirtualMotive& m, int k) { return (k % 2 == 0) ? m : negate(m); }

VirtualMotive tate_twist(const VirtualMotive& m, int r) {
  const Rational scale = rational_pow(Rational(Integer(std::to_string(m.q()))), -r);
  std::vector<Atom> atoms;
  for (const auto& a : m.atoms()) atoms.push_back({a.poly.scale_arg(scale), a.mult});
  return {m.q(), std::move(atoms)};
}

VirtualMotive tensor(const VirtualMotive& m, const VirtualMotive& n) {
  require_same_base(m, n);
  std::vector<Atom> atoms;
  for (const auto& a : m.atoms())
    for (const auto& b : n.atoms()) atoms.push_back({composed_product(a.poly, b.poly), a.mult * b.mult});
  return {m.q(), std::move(atoms)};
}

VirtualMotive dual(const VirtualMotive& m) {
  std::vector<Atom> atoms;
  for (const auto& a : m.atoms()) atoms.push_back({a.poly.reversed().with_unit_constant(), a.mult});
  return {m.q(), std::move(atoms)};
}

VirtualMotive pushforward_scalars(const VirtualMotive& m, int degree) {
  if (degree < 1) fail(ErrorKind::InvalidInput, "extension degree must be positive");
  Integer root;
  const Integer qm(std::to_string(m.q()));
  if (!mpz_root(root.get_mpz_t(), qm.get_mpz_t(), static_cast<unsigned long>(degree)))
    fail(ErrorKind::BaseMismatch, std::to_string(m.q()) + " is not a " + std::to_string(degree) + "-th power");
  std::vector<Atom> atoms;
  for (const auto& a : m.atoms()) atoms.push_back({a.poly.compose_power(degree), a.mult});
  return {root.get_si(), std::move(atoms)};
}

long euler_char(const VirtualMotive& m) {
  long chi = 0;
  for (const auto& a : m.atoms()) chi += a.mult * a.poly.degree();
  return chi;
}

Rational det_frobenius(const VirtualMotive& m) {
  // prod of inverse roots of a: (-1)^deg * leading coefficient
  Rational det(1);
  for (const auto& a : m.atoms()) {
    Rational prod = a.poly.leading();
    if (a.poly.degree() % 2) prod = -prod;
    det *= rational_pow(prod, -a.mult);
  }
  return det;
}

FunctionalEquationReport verify_functional_equation(const VirtualMotive& m) {
  FunctionalEquationReport report;
  report.chi = euler_char(m);
  report.det = det_frobenius(m);

  const RationalFunctionQ z = m.z_function();
  const RationalFunctionQ zd = dual(m).z_function();
  // Z(M*, 1/t) = t^{deg den* - deg num*} rev(num*) / rev(den*)
  const long t_exponent = zd.den().degree() - zd.num().degree();
  // Z(M*,1/t) / Z(M,t) = (-t)^chi det^{-1}
  //   <=> t-exponents agree and rev(num*)·den·det = (-1)^chi rev(den*)·num
  const QPoly lhs = zd.num().reversed() * z.den() * report.det;
  QPoly rhs = zd.den().reversed() * z.num();
  if (report.chi % 2) rhs = -rhs;
  report.holds = t_exponent == report.chi && lhs == rhs;
  return report;
}

Rational sharp_star(const VirtualMotive& m, int n) {
  if (n < 1) fail(ErrorKind::InvalidInput, "count index must be positive");
  if (m.is_zero()) return Rational(0);
  return series_log_derivative_counts(m.z_function(), n).back();
}

// ---- JSON ----

nlohmann::json motive_to_json(const VirtualMotive& m) {
  nlohmann::json j;
  j["q"] = m.q();
  j["atoms"] = nlohmann::json::array();
  for (const auto& a : m.atoms()) j["atoms"].push_back({{"poly", poly_to_json(a.poly)}, {"mult", a.mult}});
  return j;
}

VirtualMotive motive_from_json(const nlohmann::json& j) {
  try {
    const auto q = j.at("q").get<std::int64_t>();
    std::vector<Atom> atoms;
    for (const auto& a : j.value("atoms", nlohmann::json::array())) {
      QPoly p = poly_from_json(a.at("poly"));
      if (p.constant_term() == 0) fail(ErrorKind::ZeroConstantTerm, "atom polynomial has zero constant term");
      atoms.push_back({p, a.at("mult").get<long>()});
    }
    return {q, std::move(atoms)};
  } catch (const nlohmann::json::exception& ex) {
    fail(ErrorKind::InvalidInput, std::string("malformed motive JSON: ") + ex.what());
  }
}

}  // namespace mz
