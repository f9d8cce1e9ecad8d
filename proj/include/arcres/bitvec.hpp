#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace arcres {

/// Word-level helpers shared by every bit-packed structure in the library.
namespace bits {

inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t nbits) { return (nbits + kWordBits - 1) / kWordBits; }

inline bool test(std::span<const std::uint64_t> w, std::size_t i) {
  return (w[i / kWordBits] >> (i % kWordBits)) & 1u;
}
inline void set(std::span<std::uint64_t> w, std::size_t i) { w[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits); }
inline void reset(std::span<std::uint64_t> w, std::size_t i) {
  w[i / kWordBits] &= ~(std::uint64_t{1} << (i % kWordBits));
}

inline std::size_t count(std::span<const std::uint64_t> w) {
  std::size_t c = 0;
  for (auto x : w) c += static_cast<std::size_t>(std::popcount(x));
  return c;
}

inline std::size_t count_and(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return c;
}

inline bool intersects(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & b[i]) return true;
  return false;
}

inline bool none(std::span<const std::uint64_t> w) {
  for (auto x : w)
    if (x) return false;
  return true;
}

/// Calls f(index) for every set bit, ascending.
template <class F>
void for_each(std::span<const std::uint64_t> w, F&& f) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::uint64_t x = w[i];
    while (x) {
      f(i * kWordBits + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
}

}  // namespace bits

/// Fixed-length dynamic bit vector.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t nbits) : size_(nbits), words_(bits::words_for(nbits), 0) {}

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const { return bits::test(words_, i); }
  void set(std::size_t i) { bits::set(words_, i); }
  void reset(std::size_t i) { bits::reset(words_, i); }
  std::size_t count() const { return bits::count(words_); }
  bool none() const { return bits::none(words_); }
  bool intersects(const BitVec& o) const { return bits::intersects(words_, o.words_); }
  std::size_t count_and(const BitVec& o) const { return bits::count_and(words_, o.words_); }

  BitVec& operator|=(const BitVec& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  BitVec& operator&=(const BitVec& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  BitVec& operator^=(const BitVec& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }

  std::vector<std::uint32_t> indices() const {
    std::vector<std::uint32_t> out;
    bits::for_each(words_, [&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
    return out;
  }

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  bool operator==(const BitVec&) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace arcres
