#include "mz/series.hpp"

#include <algorithm>
#include <sstream>

#include "mz/error.hpp"
#include "mz/linalg.hpp"

namespace mz {

// ---- PowerSeriesQ ----

PowerSeriesQ::PowerSeriesQ(int cutoff) {
  if (cutoff < 0) fail(ErrorKind::InvalidInput, "negative series cutoff");
  coeffs_.assign(static_cast<std::size_t>(cutoff) + 1, Rational(0));
}

PowerSeriesQ::PowerSeriesQ(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) fail(ErrorKind::InvalidInput, "series needs at least the constant coefficient");
}

PowerSeriesQ PowerSeriesQ::one(int cutoff) {
  PowerSeriesQ s(cutoff);
  s[0] = 1;
  return s;
}

PowerSeriesQ PowerSeriesQ::from_poly(const QPoly& p, int cutoff) {
  PowerSeriesQ s(cutoff);
  for (int k = 0; k <= std::min(cutoff, p.degree()); ++k) s[k] = p.coeff(k);
  return s;
}

PowerSeriesQ PowerSeriesQ::truncated(int cutoff) const {
  if (cutoff > this->cutoff()) fail(ErrorKind::InvalidInput, "cannot extend a series past its cutoff");
  return PowerSeriesQ(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + cutoff + 1));
}

PowerSeriesQ PowerSeriesQ::inverse() const {
  if (coeffs_[0] == 0) fail(ErrorKind::NotInvertible, "series with zero constant term is not invertible");
  const int n = cutoff();
  PowerSeriesQ r(n);
  const Rational inv0 = 1 / coeffs_[0];
  r[0] = inv0;
  for (int k = 1; k <= n; ++k) {
    Rational acc(0);
    for (int j = 1; j <= k; ++j) acc += coeffs_[static_cast<std::size_t>(j)] * r[k - j];
    r[k] = -acc * inv0;
  }
  return r;
}

PowerSeriesQ PowerSeriesQ::log_derivative() const {
  const int n = cutoff();
  PowerSeriesQ tder(n);
  for (int k = 1; k <= n; ++k) tder[k] = coeffs_[static_cast<std::size_t>(k)] * k;
  return tder * inverse();
}

PowerSeriesQ operator+(const PowerSeriesQ& a, const PowerSeriesQ& b) {
  const int n = std::min(a.cutoff(), b.cutoff());
  PowerSeriesQ r(n);
  for (int k = 0; k <= n; ++k) r[k] = a[k] + b[k];
  return r;
}

PowerSeriesQ operator*(const PowerSeriesQ& a, const PowerSeriesQ& b) {
  const int n = std::min(a.cutoff(), b.cutoff());
  PowerSeriesQ r(n);
  for (int i = 0; i <= n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= n; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// ---- RationalFunctionQ ----

RationalFunctionQ::RationalFunctionQ() : num_(QPoly::constant(1)), den_(QPoly::constant(1)) {}

RationalFunctionQ::RationalFunctionQ(QPoly num, QPoly den) {
  if (den.is_zero()) fail(ErrorKind::DivisionByZero, "zero denominator");
  if (num.constant_term() == 0 || den.constant_term() == 0)
    fail(ErrorKind::ZeroConstantTerm, "rational function must have nonzero constant terms");
  if (num.constant_term() != den.constant_term())
    fail(ErrorKind::InvalidInput, "rational function must take the value 1 at 0");
  const QPoly g = gcd(num, den);
  num_ = div_exact(num, g).with_unit_constant();
  den_ = div_exact(den, g).with_unit_constant();
}

PowerSeriesQ RationalFunctionQ::series(int cutoff) const {
  return PowerSeriesQ::from_poly(num_, cutoff) * PowerSeriesQ::from_poly(den_, cutoff).inverse();
}

RationalFunctionQ RationalFunctionQ::scale_arg(const Rational& c) const {
  if (c == 0) return {};
  return {num_.scale_arg(c), den_.scale_arg(c)};
}

RationalFunctionQ RationalFunctionQ::compose_power(int m) const { return {num_.compose_power(m), den_.compose_power(m)}; }

RationalFunctionQ operator*(const RationalFunctionQ& a, const RationalFunctionQ& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}

RationalFunctionQ operator/(const RationalFunctionQ& a, const RationalFunctionQ& b) {
  return {a.num_ * b.den_, a.den_ * b.num_};
}

std::string RationalFunctionQ::to_string(char var) const {
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

RationalFunctionQ pow(const RationalFunctionQ& r, int n) {
  if (n < 0) return pow(r.inverse(), -n);
  return {pow(r.num(), static_cast<unsigned>(n)), pow(r.den(), static_cast<unsigned>(n))};
}

// ---- counts <-> series ----

PowerSeriesQ zeta_series_from_counts(const std::vector<Integer>& counts) {
  const int n = static_cast<int>(counts.size());
  PowerSeriesQ z = PowerSeriesQ::one(n);
  // k z_k = sum_{j=1}^{k} N_j z_{k-j}, from z' = z · sum N_j t^{j-1}
  for (int k = 1; k <= n; ++k) {
    Rational acc(0);
    for (int j = 1; j <= k; ++j) acc += Rational(counts[static_cast<std::size_t>(j - 1)]) * z[k - j];
    z[k] = acc / k;
  }
  return z;
}

PowerSeriesQ zeta_series_from_counts(const std::vector<std::uint64_t>& counts) {
  std::vector<Integer> c;
  c.reserve(counts.size());
  for (auto v : counts) {
    Integer z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    c.push_back(z);
  }
  return zeta_series_from_counts(c);
}

std::vector<Rational> series_log_derivative_counts(const RationalFunctionQ& r, int n) {
  if (n < 1) fail(ErrorKind::InvalidInput, "need at least one count");
  const PowerSeriesQ ld = r.series(n).log_derivative();
  std::vector<Rational> out;
  for (int k = 1; k <= n; ++k) out.push_back(ld[k]);
  return out;
}

RationalFunctionQ rational_fit(const PowerSeriesQ& s, int dnum, int dden) {
  if (dnum < 0 || dden < 0) fail(ErrorKind::InvalidInput, "negative degree bound");
  const int cutoff = s.cutoff();
  if (cutoff < dnum + dden + 2)
    fail(ErrorKind::InsufficientTerms, "rational fit with degrees (" + std::to_string(dnum) + "," +
                                           std::to_string(dden) + ") needs cutoff >= " +
                                           std::to_string(dnum + dden + 2) + ", got " + std::to_string(cutoff));
  if (s[0] != 1) fail(ErrorKind::NoFit, "series must start with 1");

  auto coef = [&](int k) { return k < 0 ? Rational(0) : s[k]; };
  // Every coefficient beyond dnum of s·Q must vanish: sum_{j=1}^{dden} q_j s_{k-j} = -s_k.
  linalg::Matrix m;
  std::vector<Rational> rhs;
  for (int k = dnum + 1; k <= cutoff; ++k) {
    std::vector<Rational> row(static_cast<std::size_t>(dden));
    for (int j = 1; j <= dden; ++j) row[static_cast<std::size_t>(j - 1)] = coef(k - j);
    m.push_back(std::move(row));
    rhs.push_back(-s[k]);
  }
  std::vector<Rational> qcoeffs{Rational(1)};
  if (dden > 0) {
    auto sol = linalg::solve(std::move(m), std::move(rhs));
    if (!sol) fail(ErrorKind::NoFit, "no rational function of degrees (" + std::to_string(dnum) + "," +
                                         std::to_string(dden) + ") matches the series");
    qcoeffs.insert(qcoeffs.end(), sol->begin(), sol->end());
  } else {
    for (std::size_t i = 0; i < rhs.size(); ++i)
      if (rhs[i] != 0) fail(ErrorKind::NoFit, "series is not a polynomial of degree <= " + std::to_string(dnum));
  }
  const QPoly den(qcoeffs);
  std::vector<Rational> pcoeffs(static_cast<std::size_t>(dnum) + 1, Rational(0));
  for (int k = 0; k <= dnum; ++k)
    for (int j = 0; j <= std::min(k, dden); ++j) pcoeffs[static_cast<std::size_t>(k)] += den.coeff(j) * coef(k - j);
  RationalFunctionQ fit(QPoly(std::move(pcoeffs)), den);
  if (!(fit.series(cutoff) == s)) fail(ErrorKind::NoFit, "re-expanded fit disagrees with the series");
  return fit;
}

RationalFunctionQ rational_fit_auto(const PowerSeriesQ& s) {
  const int cutoff = s.cutoff();
  const int dmax = (cutoff - 2) / 2;
  if (dmax < 0) fail(ErrorKind::InsufficientTerms, "series too short for any verified fit");
  std::vector<int> tries;
  for (int d = dmax >= 1 ? 1 : 0; d <= dmax; d *= 2) {
    tries.push_back(d);
    if (d == 0) break;
  }
  if (tries.back() != dmax) tries.push_back(dmax);
  for (int d : tries) {
    try {
      return rational_fit(s, d, d);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoFit) throw;
    }
  }
  fail(ErrorKind::NoFit, "no rational fit within degree " + std::to_string(dmax));
}

}  // namespace mz
