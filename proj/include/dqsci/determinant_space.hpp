#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "dqsci/determinant.hpp"

namespace dqsci {

/// Canonically ordered, duplicate-free determinant list in one
/// (n_alpha, n_beta) sector. Position k is the index of c_k and H_lk.
class DeterminantSpace {
 public:
  DeterminantSpace() = default;
  DeterminantSpace(int n_orbitals, int n_alpha, int n_beta);
  /// Sorts and deduplicates; throws ContractViolation on a sector mismatch or
  /// an occupied orbital >= n_orbitals.
  DeterminantSpace(std::vector<Determinant> dets, int n_orbitals, int n_alpha, int n_beta);

  int n_orbitals() const noexcept { return n_orbitals_; }
  int n_alpha() const noexcept { return n_alpha_; }
  int n_beta() const noexcept { return n_beta_; }

  std::size_t size() const noexcept { return dets_.size(); }
  bool empty() const noexcept { return dets_.empty(); }
  const Determinant& operator[](std::size_t k) const { return dets_[k]; }
  std::span<const Determinant> dets() const noexcept { return dets_; }
  auto begin() const noexcept { return dets_.begin(); }
  auto end() const noexcept { return dets_.end(); }

  std::optional<std::size_t> index_of(const Determinant& d) const;
  bool contains(const Determinant& d) const { return index_of(d).has_value(); }
  /// True if every determinant of `other` is also in this space.
  bool includes(const DeterminantSpace& other) const;

  /// FNV-1a over the canonical list; identifies a space in result records.
  std::uint64_t checksum() const noexcept;

  friend bool operator==(const DeterminantSpace&, const DeterminantSpace&) = default;

 private:
  int n_orbitals_ = 0;
  int n_alpha_ = 0;
  int n_beta_ = 0;
  std::vector<Determinant> dets_;
};

/// One "alpha|beta" line per determinant.
void write_space(std::ostream& out, const DeterminantSpace& space);
/// Reads the line format; '#' starts a comment. Orbital count and sector are
/// taken from the first determinant.
DeterminantSpace read_space(std::istream& in);

}  // namespace dqsci
