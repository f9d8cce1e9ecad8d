#include "arcres/gf.hpp"

#include <bit>
#include <sstream>

#include "arcres/errors.hpp"

namespace arcres {

namespace {

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << "0x" << std::hex << v;
  return os.str();
}

}  // namespace

int poly_degree(std::uint64_t a) { return a == 0 ? -1 : 63 - std::countl_zero(a); }

std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    a <<= 1;
    b >>= 1;
  }
  return r;
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
  const int dm = poly_degree(m);
  for (int da = poly_degree(a); da >= dm; da = poly_degree(a)) a ^= m << (da - dm);
  return a;
}

std::uint32_t Field::default_modulus(unsigned t) {
  // Primitive trinomials/pentanomials of each degree.
  static constexpr std::uint32_t table[17] = {
      0,      0x3,    0x7,    0xB,    0x13,   0x25,   0x43,    0x83,   0x11D,
      0x211,  0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1002D,
  };
  if (t < 1 || t > 16) throw ParameterError("field degree must be in [1, 16], got " + std::to_string(t));
  return table[t];
}

Field::Field(unsigned t, std::uint32_t modulus) : t_(t), modulus_(modulus), order_(1u << t) {
  if (t < 1 || t > 16) throw ParameterError("field degree must be in [1, 16], got " + std::to_string(t));
  if (poly_degree(modulus) != static_cast<int>(t))
    throw ParameterError("modulus " + hex(modulus) + " does not have degree " + std::to_string(t));
  // Trial division by every polynomial of degree 1..t/2.
  for (std::uint64_t f = 2; poly_degree(f) <= static_cast<int>(t) / 2; ++f) {
    if (poly_mod(modulus, f) == 0)
      throw ParameterError("modulus " + hex(modulus) + " is not irreducible: divisible by " + hex(f));
  }

  const std::uint32_t group = order_ - 1;
  auto slow_mul = [&](std::uint32_t a, std::uint32_t b) {
    return static_cast<std::uint32_t>(poly_mod(clmul(a, b), modulus_));
  };

  // x need not be primitive for an arbitrary irreducible modulus; search.
  std::uint32_t gen = 0;
  for (std::uint32_t g = (order_ == 2 ? 1 : 2); g < order_ && gen == 0; ++g) {
    std::uint32_t x = g;
    std::uint32_t ord = 1;
    while (x != 1) {
      x = slow_mul(x, g);
      ++ord;
    }
    if (ord == group) gen = g;
  }

  exp_.assign(2 * static_cast<std::size_t>(group), 0);
  log_.assign(order_, 0);
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < group; ++i) {
    exp_[i] = x;
    exp_[i + group] = x;
    log_[x] = i;
    x = slow_mul(x, gen);
  }
}

void Field::check(FieldElement a) const {
  if (a.value >= order_)
    throw ParameterError("element " + std::to_string(a.value) + " outside GF(" + std::to_string(order_) + ")");
}

FieldElement Field::element(std::uint32_t value) const {
  FieldElement e{value};
  check(e);
  return e;
}

FieldElement Field::add(FieldElement a, FieldElement b) const {
  check(a);
  check(b);
  return {a.value ^ b.value};
}

FieldElement Field::mul(FieldElement a, FieldElement b) const {
  check(a);
  check(b);
  if (a.value == 0 || b.value == 0) return {0};
  return {exp_[log_[a.value] + log_[b.value]]};
}

FieldElement Field::inv(FieldElement a) const {
  check(a);
  if (a.value == 0) throw ParameterError("zero has no inverse");
  const std::uint32_t group = order_ - 1;
  return {exp_[(group - log_[a.value]) % group]};
}

FieldElement Field::pow(FieldElement a, std::uint64_t e) const {
  check(a);
  if (e == 0) return {1};
  if (a.value == 0) return {0};
  const std::uint64_t group = order_ - 1;
  return {exp_[static_cast<std::size_t>((log_[a.value] * (e % group)) % group)]};
}

}  // namespace arcres
