#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "dqsci/error.hpp"

namespace dqsci {

/// Fixed-width occupation mask; bit k is orbital k. `Words` 64-bit words give
/// room for 64*Words orbitals. Ordering is numeric (most significant word
/// compared first).
template <std::size_t Words>
class BitString {
 public:
  static constexpr int kMaxBits = static_cast<int>(64 * Words);

  constexpr BitString() = default;
  constexpr explicit BitString(std::uint64_t low) { words_[0] = low; }

  constexpr bool test(int k) const noexcept { return (words_[k >> 6] >> (k & 63)) & 1u; }
  constexpr BitString& set(int k) noexcept {
    words_[k >> 6] |= std::uint64_t{1} << (k & 63);
    return *this;
  }
  constexpr BitString& reset(int k) noexcept {
    words_[k >> 6] &= ~(std::uint64_t{1} << (k & 63));
    return *this;
  }
  constexpr BitString& flip(int k) noexcept {
    words_[k >> 6] ^= std::uint64_t{1} << (k & 63);
    return *this;
  }

  constexpr int popcount() const noexcept {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  /// Number of set bits with index strictly below k.
  constexpr int count_below(int k) const noexcept {
    int c = 0;
    const std::size_t w = static_cast<std::size_t>(k >> 6);
    for (std::size_t i = 0; i < w; ++i) c += std::popcount(words_[i]);
    const std::uint64_t mask = (std::uint64_t{1} << (k & 63)) - 1;
    return c + std::popcount(words_[w] & mask);
  }
  constexpr bool none() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  /// Index of the lowest set bit, or -1.
  constexpr int lowest() const noexcept {
    for (std::size_t i = 0; i < Words; ++i)
      if (words_[i]) return static_cast<int>(64 * i) + std::countr_zero(words_[i]);
    return -1;
  }
  /// True if every set bit lies below n.
  constexpr bool fits(int n) const noexcept {
    for (int k = n; k < kMaxBits; ++k)
      if (test(k)) return false;
    return true;
  }

  /// Visit set bits in ascending order.
  template <class F>
  constexpr void for_each_set(F&& f) const {
    for (std::size_t i = 0; i < Words; ++i)
      for (std::uint64_t w = words_[i]; w; w &= w - 1)
        f(static_cast<int>(64 * i) + std::countr_zero(w));
  }

  constexpr std::uint64_t word(std::size_t i) const noexcept { return words_[i]; }

  friend constexpr BitString operator^(BitString a, const BitString& b) noexcept {
    for (std::size_t i = 0; i < Words; ++i) a.words_[i] ^= b.words_[i];
    return a;
  }
  friend constexpr BitString operator&(BitString a, const BitString& b) noexcept {
    for (std::size_t i = 0; i < Words; ++i) a.words_[i] &= b.words_[i];
    return a;
  }
  friend constexpr BitString operator|(BitString a, const BitString& b) noexcept {
    for (std::size_t i = 0; i < Words; ++i) a.words_[i] |= b.words_[i];
    return a;
  }
  friend constexpr bool operator==(const BitString&, const BitString&) = default;
  friend constexpr std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    for (std::size_t i = Words; i-- > 0;)
      if (auto c = a.words_[i] <=> b.words_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

  /// Orbital 0 leftmost: "110" has orbitals 0 and 1 occupied.
  std::string to_string(int n) const {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int k = 0; k < n; ++k)
      if (test(k)) s[static_cast<std::size_t>(k)] = '1';
    return s;
  }
  static BitString from_string(std::string_view s) {
    if (static_cast<int>(s.size()) > kMaxBits)
      throw ContractViolation("bitstring longer than " + std::to_string(kMaxBits) + " orbitals");
    BitString b;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s[k] == '1') b.set(static_cast<int>(k));
      else if (s[k] != '0')
        throw ContractViolation("bitstring '" + std::string(s) + "' has a character other than 0/1");
    }
    return b;
  }

  std::size_t hash() const noexcept {
    std::uint64_t h = 0x9E3779B97F4A7C15ull;
    for (auto w : words_) {
      h ^= w + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

 private:
  std::array<std::uint64_t, Words> words_{};
};

/// Occupation of one spin channel, up to 64 orbitals.
using SpinString = BitString<1>;
/// Multi-word variant for up to 128 orbitals.
using WideSpinString = BitString<2>;

}  // namespace dqsci

template <std::size_t W>
struct std::hash<dqsci::BitString<W>> {
  std::size_t operator()(const dqsci::BitString<W>& b) const noexcept { return b.hash(); }
};
