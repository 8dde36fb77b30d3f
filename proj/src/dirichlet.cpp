#include "mz/dirichlet.hpp"

#include <cmath>
#include <string>

#include "mz/error.hpp"
#include "mz/json_util.hpp"

namespace mz {

DirichletSeries::DirichletSeries(int cutoff) {
  if (cutoff < 1) fail(ErrorKind::InvalidInput, "Dirichlet cutoff must be at least 1");
  a_.assign(static_cast<std::size_t>(cutoff) + 1, Rational(0));
}

DirichletSeries DirichletSeries::identity(int cutoff) {
  DirichletSeries f(cutoff);
  f[1] = 1;
  return f;
}

DirichletSeries DirichletSeries::ones(int cutoff) {
  DirichletSeries f(cutoff);
  for (int n = 1; n <= cutoff; ++n) f[n] = 1;
  return f;
}

DirichletSeries DirichletSeries::truncated(int cutoff) const {
  if (cutoff > this->cutoff()) fail(ErrorKind::InvalidInput, "cannot extend a Dirichlet series past its cutoff");
  DirichletSeries f(cutoff);
  for (int n = 1; n <= cutoff; ++n) f[n] = (*this)[n];
  return f;
}

DirichletSeries dirichlet_mul(const DirichletSeries& f, const DirichletSeries& g) {
  const int n = std::min(f.cutoff(), g.cutoff());
  DirichletSeries h(n);
  for (int d = 1; d <= n; ++d) {
    if (f[d] == 0) continue;
    for (int k = 1; d * k <= n; ++k)
      if (g[k] != 0) h[d * k] += f[d] * g[k];
  }
  return h;
}

DirichletSeries dirichlet_inv(const DirichletSeries& f) {
  if (f[1] == 0) fail(ErrorKind::NotInvertible, "Dirichlet series with a_1 = 0 is not invertible");
  const int n = f.cutoff();
  const Rational inv1 = 1 / f[1];
  DirichletSeries acc(n);  // acc[m] = sum_{d | m, d > 1} a_d b_{m/d}
  DirichletSeries b(n);
  for (int m = 1; m <= n; ++m) {
    b[m] = m == 1 ? inv1 : -inv1 * acc[m];
    if (b[m] == 0) continue;
    for (int d = 2; d * m <= n; ++d)
      if (f[d] != 0) acc[d * m] += f[d] * b[m];
  }
  return b;
}

DirichletSeries shift_argument(const DirichletSeries& f, int m) {
  DirichletSeries g(f.cutoff());
  for (int n = 1; n <= f.cutoff(); ++n)
    if (f[n] != 0) g[n] = f[n] * rational_pow(Rational(n), -m);
  return g;
}

DirichletSeries from_euler_factor(const RationalFunctionQ& r, std::int64_t norm, int cutoff) {
  if (norm < 2) fail(ErrorKind::InvalidInput, "place norm must be at least 2");
  DirichletSeries f = DirichletSeries::identity(cutoff);
  int top = 0;
  for (std::int64_t power = norm; power <= cutoff; power *= norm) ++top;
  if (top == 0) return f;
  const PowerSeriesQ s = r.series(top);
  std::int64_t index = 1;
  for (int k = 1; k <= top; ++k) {
    index *= norm;
    f[static_cast<int>(index)] = s[k];
  }
  return f;
}

DirichletSeries euler_product(const std::vector<EulerFactor>& factors, int cutoff) {
  DirichletSeries acc = DirichletSeries::identity(cutoff);
  for (const auto& [norm, factor] : factors) {
    if (norm < 2) fail(ErrorKind::InvalidInput, "place norm must be at least 2");
    if (norm > cutoff) continue;
    acc = dirichlet_mul(acc, from_euler_factor(factor, norm, cutoff));
  }
  return acc;
}

DirichletSeries solve_shift_equation(const DirichletSeries& f) {
  if (f[1] != 1)
    fail(ErrorKind::BadLeadingCoefficient, "shift equation needs a_1 = 1, got " + to_string(f[1]));
  const int n = f.cutoff();
  // g(s) = f(s) g(s+1) gives b_m (1 - 1/m) = sum_{d | m, d > 1} a_d b_{m/d} / (m/d)
  DirichletSeries acc(n);
  DirichletSeries g(n);
  for (int m = 1; m <= n; ++m) {
    g[m] = m == 1 ? Rational(1) : acc[m] * Rational(m, m - 1);
    if (g[m] == 0) continue;
    const Rational scaled = g[m] / m;
    for (int d = 2; d * m <= n; ++d)
      if (f[d] != 0) acc[d * m] += f[d] * scaled;
  }
  return g;
}

Rational abscissa_bound(int w, int height) {
  if (height < 0) fail(ErrorKind::InvalidInput, "height bound must be nonnegative");
  return ratio(w, 2) + 1;
}

DirichletValue evaluate(const DirichletSeries& f, double s) {
  DirichletValue out;
  double max_abs = 0;
  for (int n = 1; n <= f.cutoff(); ++n) {
    if (f[n] == 0) continue;
    const double a = f[n].get_d();
    out.value += a * std::pow(static_cast<double>(n), -s);
    max_abs = std::max(max_abs, std::abs(a));
  }
  if (s > 1) {
    const double n = f.cutoff();
    out.tail = max_abs * std::pow(n, 1 - s) / (s - 1);
  }
  return out;
}

nlohmann::json dirichlet_to_json(const DirichletSeries& f) {
  nlohmann::json a = nlohmann::json::object();
  for (int n = 1; n <= f.cutoff(); ++n)
    if (f[n] != 0) a[std::to_string(n)] = to_string(f[n]);
  return {{"cutoff", f.cutoff()}, {"a", a}};
}

DirichletSeries dirichlet_from_json(const nlohmann::json& j) {
  try {
    DirichletSeries f(j.at("cutoff").get<int>());
    const auto coeffs = j.value("a", nlohmann::json::object());
    for (const auto& [key, value] : coeffs.items()) {
      std::size_t used = 0;
      const long n = std::stol(key, &used);
      if (used != key.size() || n < 1 || n > f.cutoff())
        fail(ErrorKind::InvalidInput, "coefficient index '" + key + "' outside 1.." + std::to_string(f.cutoff()));
      f[static_cast<int>(n)] = rational_from_json(value);
    }
    return f;
  } catch (const nlohmann::json::exception& ex) {
    fail(ErrorKind::InvalidInput, std::string("malformed Dirichlet series JSON: ") + ex.what());
  } catch (const std::logic_error&) {
    fail(ErrorKind::InvalidInput, "malformed Dirichlet coefficient index");
  }
}

}  // namespace mz
