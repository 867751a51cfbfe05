#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace dqsci {

/// Active-space Hamiltonian in a real orthonormal orbital basis.
///
/// One-electron integrals are kept as a dense symmetric matrix. Two-electron
/// integrals (pq|rs) are in chemists' notation and stored once per 8-fold
/// permutation class, keyed by the canonical composite index with p>=q, r>=s
/// and pair(pq) >= pair(rs).
class IntegralSet {
 public:
  IntegralSet() = default;
  IntegralSet(int n_orbitals, int n_alpha, int n_beta);

  int n_orbitals() const noexcept { return n_orbitals_; }
  int n_alpha() const noexcept { return n_alpha_; }
  int n_beta() const noexcept { return n_beta_; }

  double core_energy() const noexcept { return core_energy_; }
  void set_core_energy(double e) noexcept { core_energy_ = e; }

  double h1(int p, int q) const;
  /// Sets both h1(p,q) and h1(q,p).
  void set_h1(int p, int q, double value);
  const Eigen::MatrixXd& h1_matrix() const noexcept { return h1_; }

  /// (pq|rs) for any index order; unset elements are zero.
  double eri(int p, int q, int r, int s) const;
  /// Sets the whole permutation class of (pq|rs).
  void set_eri(int p, int q, int r, int s, double value);
  std::span<const double> eri_packed() const noexcept { return eri_; }

  static constexpr std::size_t pair_index(std::size_t p, std::size_t q) noexcept {
    return p >= q ? p * (p + 1) / 2 + q : q * (q + 1) / 2 + p;
  }
  static constexpr std::size_t eri_index(std::size_t p, std::size_t q, std::size_t r,
                                         std::size_t s) noexcept {
    return pair_index(pair_index(p, q), pair_index(r, s));
  }

 private:
  void check_index(int p) const;

  int n_orbitals_ = 0;
  int n_alpha_ = 0;
  int n_beta_ = 0;
  double core_energy_ = 0.0;
  Eigen::MatrixXd h1_;
  std::vector<double> eri_;
};

/// Parses FCIDUMP text. Indices are 1-based on disk. ORBSYM/ISYM are read
/// and discarded.
IntegralSet parse_fcidump(std::istream& in);
IntegralSet read_fcidump(const std::filesystem::path& path);

/// Writes every nonzero unique integral with 17 significant digits.
void write_fcidump(std::ostream& out, const IntegralSet& ints);

/// Same orbitals and sector, all two-electron integrals dropped.
IntegralSet one_body_part(const IntegralSet& ints);

}  // namespace dqsci
