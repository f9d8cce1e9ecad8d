#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace arcres {

/// Element of GF(2^t): polynomial coefficient bits, bit i = coefficient of x^i.
struct FieldElement {
  std::uint32_t value = 0;
  auto operator<=>(const FieldElement&) const = default;
};

/// GF(2^t) for 1 <= t <= 16, defined by a bit-encoded irreducible modulus
/// (0x13 is x^4 + x + 1). Multiplication goes through log/antilog tables
/// built at construction; the object is immutable afterwards.
class Field {
 public:
  Field(unsigned t, std::uint32_t modulus);

  /// The modulus used when none is given (x^4+x+1 for t = 4).
  static std::uint32_t default_modulus(unsigned t);
  static Field with_default_modulus(unsigned t) { return Field(t, default_modulus(t)); }

  unsigned degree() const { return t_; }
  std::uint32_t modulus() const { return modulus_; }
  std::uint32_t order() const { return order_; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  FieldElement element(std::uint32_t value) const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement inv(FieldElement a) const;
  FieldElement pow(FieldElement a, std::uint64_t e) const;
  FieldElement sqr(FieldElement a) const { return mul(a, a); }

  /// A generator of the multiplicative group (the log table base).
  FieldElement generator() const { return {exp_[1]}; }

 private:
  void check(FieldElement a) const;

  unsigned t_;
  std::uint32_t modulus_;
  std::uint32_t order_;
  std::vector<std::uint32_t> exp_;  // 2*(order-1) entries, no wraparound needed in mul
  std::vector<std::uint32_t> log_;
};

/// Carry-less polynomial product and remainder over GF(2); used for the
/// irreducibility test and as a table-free reference in tests.
std::uint64_t clmul(std::uint64_t a, std::uint64_t b);
std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m);
int poly_degree(std::uint64_t a);

}  // namespace arcres
