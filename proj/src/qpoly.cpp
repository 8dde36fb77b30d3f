#include "mz/qpoly.hpp"

#include <algorithm>
#include <sstream>

#include "mz/error.hpp"
#include "mz/linalg.hpp"

namespace mz {

QPoly::QPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

QPoly::QPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

QPoly QPoly::constant(const Rational& c) { return QPoly(std::vector<Rational>{c}); }

QPoly QPoly::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1, Rational(0));
  v.back() = c;
  return QPoly(std::move(v));
}

void QPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational QPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return Rational(0);
  return coeffs_[static_cast<std::size_t>(i)];
}

Rational QPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

QPoly QPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return QPoly(std::move(d));
}

QPoly QPoly::scale_arg(const Rational& c) const {
  std::vector<Rational> out(coeffs_.size());
  Rational power(1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    out[i] = coeffs_[i] * power;
    power *= c;
  }
  return QPoly(std::move(out));
}

QPoly QPoly::compose_power(int m) const {
  if (m < 1) fail(ErrorKind::InvalidInput, "compose_power needs m >= 1");
  if (coeffs_.empty()) return {};
  std::vector<Rational> out((coeffs_.size() - 1) * static_cast<std::size_t>(m) + 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i * static_cast<std::size_t>(m)] = coeffs_[i];
  return QPoly(std::move(out));
}

QPoly QPoly::reversed() const {
  std::vector<Rational> out(coeffs_.rbegin(), coeffs_.rend());
  return QPoly(std::move(out));
}

QPoly QPoly::with_unit_constant() const {
  if (coeffs_.empty() || coeffs_[0] == 0) fail(ErrorKind::ZeroConstantTerm, "polynomial has zero constant term");
  const Rational inv = 1 / coeffs_[0];
  QPoly r(*this);
  return r *= inv;
}

QPoly QPoly::monic() const {
  if (coeffs_.empty()) return {};
  const Rational inv = 1 / coeffs_.back();
  QPoly r(*this);
  return r *= inv;
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

QPoly operator-(const QPoly& a) {
  QPoly r(a);
  return r *= Rational(-1);
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return QPoly(std::move(out));
}

bool operator<(const QPoly& a, const QPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    const auto& x = a.coeffs_[static_cast<std::size_t>(i)];
    const auto& y = b.coeffs_[static_cast<std::size_t>(i)];
    if (x != y) return x < y;
  }
  return false;
}

std::string QPoly::to_string(char var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) os << mz::to_string(mag);
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

QPoly pow(const QPoly& p, unsigned n) {
  QPoly result = QPoly::constant(1), base = p;
  while (n) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
  if (a.degree() < b.degree()) return {QPoly{}, a};
  std::vector<Rational> rem = a.coeffs();
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rational(0));
  const Rational lead_inv = 1 / b.leading();
  const int db = b.degree();
  for (int i = a.degree(); i >= db; --i) {
    const Rational c = rem[static_cast<std::size_t>(i)] * lead_inv;
    quot[static_cast<std::size_t>(i - db)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {QPoly(std::move(quot)), QPoly(std::move(rem))};
}

QPoly div_exact(const QPoly& a, const QPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) fail(ErrorKind::InvalidInput, "inexact polynomial division");
  return q;
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a.monic(), y = b.monic();
  while (!y.is_zero()) {
    QPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  if (x.is_zero()) return x;
  return x.constant_term() != 0 ? x.with_unit_constant() : x.monic();
}

Rational resultant(const QPoly& a, const QPoly& b) {
  const int m = a.degree(), n = b.degree();
  if (m < 0 || n < 0) return Rational(0);
  if (m == 0) return rational_pow(a.leading(), n);
  if (n == 0) return rational_pow(b.leading(), m);
  const std::size_t size = static_cast<std::size_t>(m + n);
  linalg::Matrix syl(size, std::vector<Rational>(size, Rational(0)));
  // rows hold coefficients from the leading term down
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) syl[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + i)] = a.coeff(m - i);
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i)
      syl[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + i)] = b.coeff(n - i);
  return linalg::determinant(std::move(syl));
}

}  // namespace mz
