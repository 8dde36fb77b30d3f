#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mz {

/// Hard cap on enumerated set sizes. Overridable via the MZ_ENUM_CAP environment variable.
inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 22;
std::uint64_t enumeration_cap();

bool is_prime(std::uint64_t n);

/// Prime factors of n without multiplicity, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Saturating p^e; returns UINT64_MAX on overflow.
std::uint64_t checked_power(std::uint64_t p, std::uint64_t e);

/// Raw element index: the polynomial-basis coordinates c_0..c_{e-1} packed as sum c_i p^i.
using Elem = std::uint32_t;

namespace detail {
struct FieldData;
}

class FieldElement;

/// Immutable handle to F_{p^e} = F_p[x]/(modulus). Copies share the same tables.
class FieldHandle {
 public:
  std::uint32_t p() const;
  int e() const;
  std::uint32_t q() const;
  /// Monic modulus, ascending coefficients, size e+1.
  const std::vector<std::uint32_t>& modulus() const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(long long n) const;
  FieldElement from_coords(std::span<const std::uint32_t> coords) const;
  FieldElement element(Elem index) const;
  /// Generator of the cyclic group F*, found by search at construction.
  FieldElement generator() const;

  // Raw arithmetic on indices, for enumeration loops.
  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t k) const;
  Elem from_integer(long long n) const;
  Elem generator_index() const;
  /// Discrete log to the generator base; a must be nonzero.
  std::uint32_t log(Elem a) const;
  /// Quadratic character: 0, 1 or -1 (odd q only).
  int quadratic_character(Elem a) const;

  std::vector<std::uint32_t> coords(Elem a) const;

  bool same_field(const FieldHandle& other) const;
  std::string describe() const;

 private:
  friend FieldHandle make_field(std::uint64_t p, int e);
  friend class FieldElement;
  explicit FieldHandle(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::FieldData> d_;
};

/// Value-type element: owner handle plus packed coordinates.
class FieldElement {
 public:
  FieldElement(FieldHandle owner, Elem index) : owner_(std::move(owner)), index_(index) {}

  const FieldHandle& owner() const { return owner_; }
  Elem index() const { return index_; }
  std::vector<std::uint32_t> coords() const { return owner_.coords(index_); }
  bool is_zero() const { return index_ == 0; }

  FieldElement inv() const;
  FieldElement pow(std::uint64_t k) const;
  /// x -> x^p
  FieldElement frobenius() const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a);
  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  FieldHandle owner_;
  Elem index_;
};

/// F_{p^e} with the least monic irreducible modulus, coefficient vectors ordered
/// with the highest non-leading coefficient most significant.
/// Throws NotPrime, TooLarge, InvalidInput.
FieldHandle make_field(std::uint64_t p, int e);

/// Ring embedding F -> F_{q^n}, tabulated on all of F.
class Embedding {
 public:
  Embedding(FieldHandle source, FieldHandle target, std::vector<Elem> table)
      : source_(std::move(source)), target_(std::move(target)), table_(std::move(table)) {}

  const FieldHandle& source() const { return source_; }
  const FieldHandle& target() const { return target_; }
  Elem map(Elem a) const { return table_[a]; }
  FieldElement operator()(const FieldElement& a) const;

 private:
  FieldHandle source_;
  FieldHandle target_;
  std::vector<Elem> table_;
};

/// F_{q^n} together with an embedding of F. Throws TooLarge.
std::pair<FieldHandle, Embedding> extend(const FieldHandle& base, int n);

/// Polynomials over a finite field, coefficients ascending, trimmed.
using FqPoly = std::vector<Elem>;

bool is_irreducible(const FieldHandle& f, const FqPoly& poly);

/// All monic irreducible polynomials of exactly the given degree over f, in index order.
std::vector<FqPoly> monic_irreducibles(const FieldHandle& f, int degree);

}  // namespace mz
