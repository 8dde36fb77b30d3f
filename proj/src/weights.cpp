#include <Eigen/Eigenvalues>

#include <cmath>
#include <numeric>

#include "mz/error.hpp"
#include "mz/motive.hpp"

namespace mz {

namespace {

using Complex = std::complex<long double>;

Complex eval_with_derivative(const std::vector<long double>& c, Complex x, Complex& deriv) {
  Complex value = 0;
  deriv = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    deriv = deriv * x + value;
    value = value * x + *it;
  }
  return value;
}

// Coefficients of the monic integral polynomial L^d F(y/L), F = reversed(p) made monic.
std::vector<Integer> integral_root_form(const QPoly& monic, Integer& scale) {
  scale = 1;
  for (const auto& c : monic.coeffs()) scale = lcm(scale, Integer(c.get_den()));
  const int d = monic.degree();
  std::vector<Integer> out(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) {
    Rational v = monic.coeff(i) * Rational(integer_pow(scale, static_cast<unsigned long>(d - i)));
    out[static_cast<std::size_t>(i)] = v.get_num();
  }
  return out;
}

// True when the roots in `group` (already scaled into the integral form) generate a
// factor with integer coefficients dividing `form`. Returns true when precision is
// insufficient to decide.
bool group_is_rational_factor(const std::vector<Complex>& group, const std::vector<Integer>& form) {
  std::vector<Complex> prod{Complex(1)};
  for (const auto& root : group) {
    std::vector<Complex> next(prod.size() + 1, Complex(0));
    for (std::size_t i = 0; i < prod.size(); ++i) {
      next[i + 1] += prod[i];
      next[i] -= prod[i] * root;
    }
    prod = std::move(next);
  }
  std::vector<Rational> coeffs;
  for (const auto& c : prod) {
    const long double magnitude = std::abs(c);
    if (magnitude > 1e15L) return true;
    const long double rounded = std::round(c.real());
    const long double slack = 1e-6L * std::max<long double>(1, magnitude);
    if (std::abs(c.imag()) > slack || std::abs(c.real() - rounded) > slack) return false;
    coeffs.emplace_back(Integer(std::to_string(static_cast<long long>(rounded))));
  }
  std::vector<Rational> fcoeffs;
  for (const auto& c : form) fcoeffs.emplace_back(c);
  return divmod(QPoly(std::move(fcoeffs)), QPoly(std::move(coeffs))).second.is_zero();
}

}  // namespace

std::vector<std::complex<long double>> inverse_roots(const QPoly& p) {
  if (p.constant_term() == 0) fail(ErrorKind::ZeroConstantTerm, "inverse roots need a nonzero constant term");
  const QPoly monic = p.reversed().monic();
  const int d = monic.degree();
  if (d < 1) return {};

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -monic.coeff(i).get_d();
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) fail(ErrorKind::InvalidInput, "eigenvalue iteration did not converge");

  std::vector<long double> c;
  for (int i = 0; i <= d; ++i) c.push_back(static_cast<long double>(monic.coeff(i).get_d()));
  std::vector<Complex> roots;
  for (int i = 0; i < d; ++i) {
    Complex x(solver.eigenvalues()[i].real(), solver.eigenvalues()[i].imag());
    for (int step = 0; step < 3; ++step) {
      Complex deriv;
      const Complex value = eval_with_derivative(c, x, deriv);
      if (std::abs(deriv) == 0) break;
      const Complex next = x - value / deriv;
      if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
      x = next;
    }
    roots.push_back(x);
  }
  return roots;
}

std::map<int, long> weight_profile(const VirtualMotive& m, double tol) {
  if (!(tol > 0)) fail(ErrorKind::InvalidInput, "tolerance must be positive");
  const long double log_q = std::log(static_cast<long double>(m.q()));
  std::map<int, long> profile;
  for (const auto& atom : m.atoms()) {
    const auto roots = inverse_roots(atom.poly);
    std::map<int, std::vector<Complex>> by_weight;
    for (const auto& root : roots) {
      const long double modulus = std::abs(root);
      if (modulus == 0) fail(ErrorKind::NotWeil, "zero inverse root");
      const long double guess = 2 * std::log(modulus) / log_q;
      int best = 0;
      long double best_gap = -1;
      for (int w = static_cast<int>(std::floor(guess)) - 1; w <= static_cast<int>(std::ceil(guess)) + 1; ++w) {
        const long double gap = std::abs(modulus - std::pow(static_cast<long double>(m.q()), w / 2.0L));
        if (best_gap < 0 || gap < best_gap) {
          best = w;
          best_gap = gap;
        }
      }
      const long double target = std::pow(static_cast<long double>(m.q()), best / 2.0L);
      if (best_gap / target > tol)
        fail(ErrorKind::NotWeil, "inverse root of absolute value " + std::to_string(static_cast<double>(modulus)) +
                                     " is not a Weil " + std::to_string(m.q()) + "-number");
      by_weight[best].push_back(root);
    }
    if (by_weight.size() > 1) {
      Integer scale;
      const auto form = integral_root_form(atom.poly.reversed().monic(), scale);
      const long double s = scale.get_d();
      for (auto& [w, group] : by_weight) {
        std::vector<Complex> scaled;
        for (const auto& r : group) scaled.push_back(r * s);
        if (!group_is_rational_factor(scaled, form))
          fail(ErrorKind::NotWeil, "conjugate inverse roots of " + atom.poly.to_string() + " have different weights");
      }
    }
    for (const auto& [w, group] : by_weight) profile[w] += atom.mult * static_cast<long>(group.size());
  }
  std::erase_if(profile, [](const auto& kv) { return kv.second == 0; });
  return profile;
}

}  // namespace mz
