#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dqsci/bitstring.hpp"

namespace dqsci {

/// Slater determinant as an (alpha, beta) pair of occupation strings.
/// Creation operators are ordered alpha block first, ascending orbital index
/// within each block; every sign in the library follows that convention.
struct Determinant {
  SpinString alpha;
  SpinString beta;

  friend constexpr bool operator==(const Determinant&, const Determinant&) = default;
  friend constexpr auto operator<=>(const Determinant&, const Determinant&) = default;
};

/// Doubly occupied orbitals of a seniority-zero configuration.
struct PairString {
  SpinString bits;

  int n_pairs() const noexcept { return bits.popcount(); }
  friend constexpr bool operator==(const PairString&, const PairString&) = default;
  friend constexpr auto operator<=>(const PairString&, const PairString&) = default;
};

/// Number of singly occupied orbitals.
inline int seniority(const Determinant& d) noexcept { return (d.alpha ^ d.beta).popcount(); }

inline Determinant expand_pair(const PairString& p) noexcept { return {p.bits, p.bits}; }

/// Number of spin-orbital substitutions separating `a` and `b`.
/// Throws ContractViolation if the per-spin electron counts differ.
int excitation_degree(const Determinant& a, const Determinant& b);

/// "alpha|beta", orbital 0 leftmost in each half.
std::string to_string(const Determinant& d, int n_orbitals);
Determinant parse_determinant(std::string_view text);

/// All strings with `n_set` of the lowest `n_bits` bits set, ascending.
std::vector<SpinString> enumerate_strings(int n_bits, int n_set);

struct DeterminantHash {
  std::size_t operator()(const Determinant& d) const noexcept {
    return d.alpha.hash() * 0x100000001B3ull ^ d.beta.hash();
  }
};

}  // namespace dqsci
