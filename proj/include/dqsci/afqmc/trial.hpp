#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "dqsci/ci_solution.hpp"
#include "dqsci/determinant.hpp"

namespace dqsci::afqmc {

/// Multi-determinant trial state |Psi_T> = sum_k c_k |a_k>|b_k>, stored in
/// spin-factorized form: each distinct alpha and beta string appears once and
/// every determinant refers to a pair of them.
class TrialWavefunction {
 public:
  struct Term {
    std::uint32_t alpha;  ///< index into alpha_strings()
    std::uint32_t beta;   ///< index into beta_strings()
    double coeff;
  };

  /// Throws ContractViolation when the solution is empty or not normalized
  /// to 1e-8.
  explicit TrialWavefunction(const CiSolution& sol);

  int n_orbitals() const noexcept { return n_orbitals_; }
  int n_alpha() const noexcept { return n_alpha_; }
  int n_beta() const noexcept { return n_beta_; }
  std::size_t size() const noexcept { return terms_.size(); }

  const std::vector<SpinString>& alpha_strings() const noexcept { return alpha_; }
  const std::vector<SpinString>& beta_strings() const noexcept { return beta_; }
  /// Occupied orbitals of each distinct string, ascending.
  const std::vector<std::vector<int>>& alpha_occupations() const noexcept { return alpha_occ_; }
  const std::vector<std::vector<int>>& beta_occupations() const noexcept { return beta_occ_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  /// Determinant with the largest |c_k| (first on ties).
  const Determinant& dominant() const noexcept { return dominant_; }
  /// Variational energy carried over from the CI solution.
  double energy() const noexcept { return energy_; }

  /// Spin-resolved one-particle density <Psi_T|a+_p a_q|Psi_T>.
  const Eigen::MatrixXd& density_alpha() const noexcept { return rdm_alpha_; }
  const Eigen::MatrixXd& density_beta() const noexcept { return rdm_beta_; }

 private:
  int n_orbitals_ = 0;
  int n_alpha_ = 0;
  int n_beta_ = 0;
  double energy_ = 0.0;
  std::vector<SpinString> alpha_;
  std::vector<SpinString> beta_;
  std::vector<std::vector<int>> alpha_occ_;
  std::vector<std::vector<int>> beta_occ_;
  std::vector<Term> terms_;
  Determinant dominant_;
  Eigen::MatrixXd rdm_alpha_;
  Eigen::MatrixXd rdm_beta_;
};

}  // namespace dqsci::afqmc
