#include "mz/field.hpp"

#include <cstdlib>
#include <limits>
#include <sstream>

#include "mz/error.hpp"

namespace mz {

namespace detail {

struct FieldData {
  std::uint32_t p = 0;
  int e = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;
  std::vector<std::uint32_t> pow_p;  // p^i for i in [0, e]
  Elem generator = 1;
  std::vector<Elem> exp;             // exp[k] = g^k, k in [0, q-1)
  std::vector<std::uint32_t> log;    // log[a] for a != 0
  std::vector<std::uint32_t> zech;   // zech[k] = log(1 + g^k), kNoLog when 1 + g^k = 0
  static constexpr std::uint32_t kNoLog = std::numeric_limits<std::uint32_t>::max();

  std::vector<std::uint32_t> digits(Elem a) const {
    std::vector<std::uint32_t> d(static_cast<std::size_t>(e));
    for (int i = 0; i < e; ++i) {
      d[static_cast<std::size_t>(i)] = a % p;
      a /= p;
    }
    return d;
  }

  Elem pack(const std::vector<std::uint32_t>& d) const {
    Elem a = 0;
    for (int i = e - 1; i >= 0; --i) a = a * p + d[static_cast<std::size_t>(i)];
    return a;
  }

  Elem digit_add(Elem a, Elem b) const {
    if (p == 2) return a ^ b;
    Elem r = 0;
    for (int i = 0; i < e; ++i) {
      const std::uint32_t s = (a % p + b % p) % p;
      r += s * pow_p[static_cast<std::size_t>(i)];
      a /= p;
      b /= p;
    }
    return r;
  }

  // Schoolbook product reduced by the monic modulus; used only while building tables.
  Elem slow_mul(Elem a, Elem b) const {
    const auto da = digits(a), db = digits(b);
    std::vector<std::uint64_t> prod(static_cast<std::size_t>(2 * e), 0);
    for (int i = 0; i < e; ++i) {
      if (da[static_cast<std::size_t>(i)] == 0) continue;
      for (int j = 0; j < e; ++j) {
        if (db[static_cast<std::size_t>(j)] == 0) continue;
        auto& slot = prod[static_cast<std::size_t>(i + j)];
        slot = (slot + std::uint64_t{da[static_cast<std::size_t>(i)]} * db[static_cast<std::size_t>(j)]) % p;
      }
    }
    for (int k = 2 * e - 2; k >= e; --k) {
      const std::uint64_t c = prod[static_cast<std::size_t>(k)];
      if (c == 0) continue;
      prod[static_cast<std::size_t>(k)] = 0;
      // x^k = x^{k-e} * (x^e) and x^e = -sum modulus_i x^i
      for (int i = 0; i < e; ++i) {
        auto& slot = prod[static_cast<std::size_t>(k - e + i)];
        slot = (slot + c * (p - modulus[static_cast<std::size_t>(i)] % p)) % p;
      }
    }
    std::vector<std::uint32_t> d(static_cast<std::size_t>(e));
    for (int i = 0; i < e; ++i) d[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(prod[static_cast<std::size_t>(i)]);
    return pack(d);
  }

  Elem slow_pow(Elem a, std::uint64_t k) const {
    Elem r = 1;
    while (k) {
      if (k & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      k >>= 1;
    }
    return r;
  }
};

}  // namespace detail

std::uint64_t enumeration_cap() {
  if (const char* env = std::getenv("MZ_ENUM_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return kDefaultEnumerationCap;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t checked_power(std::uint64_t p, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (p != 0 && r > std::numeric_limits<std::uint64_t>::max() / p) return std::numeric_limits<std::uint64_t>::max();
    r *= p;
  }
  return r;
}

// ---- FieldHandle ----

std::uint32_t FieldHandle::p() const { return d_->p; }
int FieldHandle::e() const { return d_->e; }
std::uint32_t FieldHandle::q() const { return d_->q; }
const std::vector<std::uint32_t>& FieldHandle::modulus() const { return d_->modulus; }

FieldElement FieldHandle::zero() const { return {*this, 0}; }
FieldElement FieldHandle::one() const { return {*this, 1}; }
FieldElement FieldHandle::from_int(long long n) const { return {*this, from_integer(n)}; }

FieldElement FieldHandle::from_coords(std::span<const std::uint32_t> coords) const {
  if (coords.size() != static_cast<std::size_t>(d_->e)) fail(ErrorKind::InvalidInput, "coordinate vector has wrong length");
  std::vector<std::uint32_t> d(coords.begin(), coords.end());
  for (auto& c : d) c %= d_->p;
  return {*this, d_->pack(d)};
}

FieldElement FieldHandle::element(Elem index) const {
  if (index >= d_->q) fail(ErrorKind::InvalidInput, "element index out of range");
  return {*this, index};
}

FieldElement FieldHandle::generator() const { return {*this, d_->generator}; }
Elem FieldHandle::generator_index() const { return d_->generator; }

Elem FieldHandle::add(Elem a, Elem b) const {
  if (a == 0) return b;
  if (b == 0) return a;
  const std::uint32_t order = d_->q - 1;
  const std::uint32_t la = d_->log[a], lb = d_->log[b];
  const std::uint32_t k = lb >= la ? lb - la : lb + order - la;
  const std::uint32_t z = d_->zech[k];
  if (z == detail::FieldData::kNoLog) return 0;
  const std::uint64_t s = std::uint64_t{la} + z;
  return d_->exp[static_cast<std::size_t>(s % order)];
}

Elem FieldHandle::neg(Elem a) const {
  if (a == 0 || d_->p == 2) return a;
  const std::uint32_t order = d_->q - 1;
  return d_->exp[(d_->log[a] + order / 2) % order];
}

Elem FieldHandle::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem FieldHandle::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  const std::uint32_t order = d_->q - 1;
  const std::uint64_t s = std::uint64_t{d_->log[a]} + d_->log[b];
  return d_->exp[static_cast<std::size_t>(s % order)];
}

Elem FieldHandle::inv(Elem a) const {
  if (a == 0) fail(ErrorKind::DivisionByZero, "inverse of zero in " + describe());
  const std::uint32_t order = d_->q - 1;
  return d_->exp[(order - d_->log[a]) % order];
}

Elem FieldHandle::pow(Elem a, std::uint64_t k) const {
  Elem r = 1;
  while (k) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

Elem FieldHandle::from_integer(long long n) const {
  const long long p = d_->p;
  return static_cast<Elem>(((n % p) + p) % p);
}

std::uint32_t FieldHandle::log(Elem a) const {
  if (a == 0) fail(ErrorKind::DivisionByZero, "logarithm of zero");
  return d_->log[a];
}

int FieldHandle::quadratic_character(Elem a) const {
  if (a == 0) return 0;
  if (d_->p == 2) return 1;
  return d_->log[a] % 2 == 0 ? 1 : -1;
}

std::vector<std::uint32_t> FieldHandle::coords(Elem a) const { return d_->digits(a); }

bool FieldHandle::same_field(const FieldHandle& other) const {
  return d_ == other.d_ || (d_->p == other.d_->p && d_->e == other.d_->e && d_->modulus == other.d_->modulus);
}

std::string FieldHandle::describe() const {
  std::ostringstream os;
  os << "F_" << d_->q;
  if (d_->e > 1) {
    os << " = F_" << d_->p << "[x]/(";
    bool first = true;
    for (int i = d_->e; i >= 0; --i) {
      const auto c = d_->modulus[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      if (!first) os << " + ";
      first = false;
      if (c != 1 || i == 0) os << c;
      if (i >= 1) os << "x";
      if (i >= 2) os << "^" << i;
    }
    os << ")";
  }
  return os.str();
}

// ---- FieldElement ----

namespace {
const FieldHandle& common_owner(const FieldElement& a, const FieldElement& b) {
  if (!a.owner().same_field(b.owner())) fail(ErrorKind::FieldMismatch, "operands belong to different fields");
  return a.owner();
}
}  // namespace

FieldElement FieldElement::inv() const { return {owner_, owner_.inv(index_)}; }
FieldElement FieldElement::pow(std::uint64_t k) const { return {owner_, owner_.pow(index_, k)}; }
FieldElement FieldElement::frobenius() const { return pow(owner_.p()); }

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  const auto& f = common_owner(a, b);
  return {f, f.add(a.index_, b.index_)};
}
FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  const auto& f = common_owner(a, b);
  return {f, f.sub(a.index_, b.index_)};
}
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  const auto& f = common_owner(a, b);
  return {f, f.mul(a.index_, b.index_)};
}
FieldElement operator-(const FieldElement& a) { return {a.owner_, a.owner_.neg(a.index_)}; }
bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.owner_.same_field(b.owner_) && a.index_ == b.index_;
}

// ---- polynomials over F_q ----

namespace {

void trim(FqPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FqPoly poly_mod(const FieldHandle& f, FqPoly a, const FqPoly& m) {
  trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  const Elem lead_inv = f.inv(m.back());
  while (static_cast<int>(a.size()) - 1 >= dm) {
    const int shift = static_cast<int>(a.size()) - 1 - dm;
    const Elem c = f.mul(a.back(), lead_inv);
    for (int i = 0; i <= dm; ++i) {
      auto& slot = a[static_cast<std::size_t>(shift + i)];
      slot = f.sub(slot, f.mul(c, m[static_cast<std::size_t>(i)]));
    }
    trim(a);
  }
  return a;
}

FqPoly poly_mulmod(const FieldHandle& f, const FqPoly& a, const FqPoly& b, const FqPoly& m) {
  if (a.empty() || b.empty()) return {};
  FqPoly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = f.add(prod[i + j], f.mul(a[i], b[j]));
  }
  return poly_mod(f, std::move(prod), m);
}

FqPoly poly_powmod(const FieldHandle& f, FqPoly base, std::uint64_t k, const FqPoly& m) {
  FqPoly result{1};
  base = poly_mod(f, std::move(base), m);
  while (k) {
    if (k & 1) result = poly_mulmod(f, result, base, m);
    base = poly_mulmod(f, base, base, m);
    k >>= 1;
  }
  return result;
}

FqPoly poly_gcd(const FieldHandle& f, FqPoly a, FqPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FqPoly r = poly_mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^{q^k} mod m by repeated q-th powers
FqPoly frobenius_power_of_x(const FieldHandle& f, int k, const FqPoly& m) {
  FqPoly h = poly_mod(f, FqPoly{0, 1}, m);
  for (int i = 0; i < k; ++i) h = poly_powmod(f, h, f.q(), m);
  return h;
}

FqPoly minus_x(const FieldHandle& f, FqPoly h) {
  if (h.size() < 2) h.resize(2, 0);
  h[1] = f.sub(h[1], 1);
  trim(h);
  return h;
}

}  // namespace

bool is_irreducible(const FieldHandle& f, const FqPoly& poly) {
  FqPoly m = poly;
  trim(m);
  const int d = static_cast<int>(m.size()) - 1;
  if (d < 1) return false;
  if (d == 1) return true;
  // Rabin: x^{q^d} = x mod m, and gcd(x^{q^{d/r}} - x, m) = 1 for primes r | d
  if (!minus_x(f, frobenius_power_of_x(f, d, m)).empty()) return false;
  for (auto r : prime_factors(static_cast<std::uint64_t>(d))) {
    const FqPoly h = minus_x(f, frobenius_power_of_x(f, d / static_cast<int>(r), m));
    if (poly_gcd(f, h, m).size() != 1) return false;
  }
  return true;
}

std::vector<FqPoly> monic_irreducibles(const FieldHandle& f, int degree) {
  if (degree < 1) fail(ErrorKind::InvalidInput, "degree must be positive");
  const std::uint64_t count = checked_power(f.q(), static_cast<std::uint64_t>(degree));
  if (count > enumeration_cap()) fail(ErrorKind::TooLarge, "too many candidate polynomials");
  std::vector<FqPoly> out;
  for (std::uint64_t i = 0; i < count; ++i) {
    FqPoly poly(static_cast<std::size_t>(degree) + 1, 0);
    std::uint64_t v = i;
    for (int j = 0; j < degree; ++j) {
      poly[static_cast<std::size_t>(j)] = static_cast<Elem>(v % f.q());
      v /= f.q();
    }
    poly.back() = 1;
    if (is_irreducible(f, poly)) out.push_back(std::move(poly));
  }
  return out;
}

// ---- construction ----

namespace {

std::shared_ptr<detail::FieldData> build_tables(std::uint32_t p, int e, std::vector<std::uint32_t> modulus) {
  auto d = std::make_shared<detail::FieldData>();
  d->p = p;
  d->e = e;
  d->modulus = std::move(modulus);
  d->pow_p.resize(static_cast<std::size_t>(e) + 1);
  d->pow_p[0] = 1;
  for (int i = 1; i <= e; ++i) d->pow_p[static_cast<std::size_t>(i)] = d->pow_p[static_cast<std::size_t>(i - 1)] * p;
  d->q = d->pow_p[static_cast<std::size_t>(e)];
  const std::uint32_t order = d->q - 1;

  const auto factors = prime_factors(order);
  Elem g = 1;
  if (order > 1) {
    for (g = 2; g < d->q; ++g) {
      bool primitive = true;
      for (auto r : factors)
        if (d->slow_pow(g, order / r) == 1) {
          primitive = false;
          break;
        }
      if (primitive) break;
    }
  }
  d->generator = g;

  d->exp.resize(order);
  d->log.assign(d->q, 0);
  Elem x = 1;
  for (std::uint32_t k = 0; k < order; ++k) {
    d->exp[k] = x;
    d->log[x] = k;
    x = d->slow_mul(x, g);
  }
  if (x != 1) fail(ErrorKind::InvalidInput, "generator search failed; modulus is not irreducible");

  d->zech.resize(order);
  for (std::uint32_t k = 0; k < order; ++k) {
    const Elem s = d->digit_add(1, d->exp[k]);
    d->zech[k] = s == 0 ? detail::FieldData::kNoLog : d->log[s];
  }
  return d;
}

}  // namespace

FieldHandle make_field(std::uint64_t p, int e) {
  if (p < 2) fail(ErrorKind::InvalidInput, "characteristic must be at least 2");
  if (e < 1) fail(ErrorKind::InvalidInput, "extension degree must be at least 1");
  if (!is_prime(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  const std::uint64_t q = checked_power(p, static_cast<std::uint64_t>(e));
  if (q > enumeration_cap())
    fail(ErrorKind::TooLarge, std::to_string(p) + "^" + std::to_string(e) + " exceeds the enumeration cap");
  const auto p32 = static_cast<std::uint32_t>(p);

  FieldHandle prime(build_tables(p32, 1, {0, 1}));
  if (e == 1) return prime;

  const std::uint64_t candidates = checked_power(p, static_cast<std::uint64_t>(e));
  for (std::uint64_t i = 0; i < candidates; ++i) {
    FqPoly poly(static_cast<std::size_t>(e) + 1, 0);
    std::uint64_t v = i;
    for (int j = 0; j < e; ++j) {
      poly[static_cast<std::size_t>(j)] = static_cast<Elem>(v % p);
      v /= p;
    }
    poly.back() = 1;
    if (!is_irreducible(prime, poly)) continue;
    return FieldHandle(build_tables(p32, e, std::vector<std::uint32_t>(poly.begin(), poly.end())));
  }
  fail(ErrorKind::InvalidInput, "no irreducible polynomial found");
}

FieldElement Embedding::operator()(const FieldElement& a) const {
  if (!a.owner().same_field(source_)) fail(ErrorKind::FieldMismatch, "element is not in the embedding source");
  return {target_, table_[a.index()]};
}

std::pair<FieldHandle, Embedding> extend(const FieldHandle& base, int n) {
  if (n < 1) fail(ErrorKind::InvalidInput, "extension degree must be at least 1");
  const std::uint64_t size = checked_power(base.q(), static_cast<std::uint64_t>(n));
  if (size > enumeration_cap()) fail(ErrorKind::TooLarge, "extension exceeds the enumeration cap");
  FieldHandle target = make_field(base.p(), base.e() * n);

  // image of the base generator x: a root of the base modulus in the target
  Elem theta = 0;
  if (base.e() == 1) {
    theta = 0;
  } else {
    const auto& mod = base.modulus();
    bool found = false;
    for (Elem t = 0; t < target.q() && !found; ++t) {
      Elem acc = 0;
      for (int i = base.e(); i >= 0; --i)
        acc = target.add(target.mul(acc, t), target.from_integer(mod[static_cast<std::size_t>(i)]));
      if (acc == 0) {
        theta = t;
        found = true;
      }
    }
    if (!found) fail(ErrorKind::InvalidInput, "base modulus has no root in the extension");
  }

  std::vector<Elem> powers(static_cast<std::size_t>(base.e()));
  Elem t = 1;
  for (int i = 0; i < base.e(); ++i) {
    powers[static_cast<std::size_t>(i)] = t;
    t = target.mul(t, theta);
  }
  std::vector<Elem> table(base.q());
  for (Elem a = 0; a < base.q(); ++a) {
    const auto c = base.coords(a);
    Elem img = 0;
    for (int i = 0; i < base.e(); ++i)
      img = target.add(img, target.mul(target.from_integer(c[static_cast<std::size_t>(i)]), powers[static_cast<std::size_t>(i)]));
    table[a] = img;
  }
  Embedding emb(base, target, std::move(table));
  return {std::move(target), std::move(emb)};
}

}  // namespace mz
