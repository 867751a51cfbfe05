#pragma once

#include <complex>

#include <Eigen/Dense>

#include "dqsci/afqmc/trial.hpp"
#include "dqsci/cholesky.hpp"
#include "dqsci/integrals.hpp"

namespace dqsci::afqmc {

using Complex = std::complex<double>;

/// One Slater-determinant sample: N x n_sigma orbital matrices plus weight.
struct Walker {
  Eigen::MatrixXcd alpha;
  Eigen::MatrixXcd beta;
  double weight = 1.0;
  /// <Psi_T|walker> at the last evaluation.
  Complex overlap{1.0, 0.0};
  /// Mixed-estimator expectation of each Cholesky vector, used as force bias.
  Eigen::VectorXcd mixed_fields;
};

/// Walker whose columns are the unit vectors of the occupied orbitals of `d`.
Walker walker_from_determinant(const Determinant& d, int n_orbitals, int n_alpha, int n_beta);

/// <Psi_T|w> = sum_k c_k det(psi_a[occ_a(k)]) det(psi_b[occ_b(k)]).
/// A singular submatrix contributes zero. Throws ContractViolation on a
/// shape mismatch.
Complex overlap_ratio(const TrialWavefunction& trial, const Walker& w);

/// Precomputed contraction tensors for repeated overlap, force-bias and
/// local-energy evaluation against one trial.
class TrialEvaluator {
 public:
  struct Result {
    Complex overlap;
    Eigen::VectorXcd mixed_fields;
    Complex energy;  ///< meaningful only when requested
  };

  TrialEvaluator(const TrialWavefunction& trial, const IntegralSet& ints,
                 const CholeskyFactors& chol);

  const TrialWavefunction& trial() const noexcept { return *trial_; }
  std::size_t n_fields() const noexcept { return static_cast<std::size_t>(lmat_.rows()); }

  Result evaluate(const Eigen::MatrixXcd& alpha, const Eigen::MatrixXcd& beta,
                  bool with_energy) const;

  /// Updates `w.overlap` and `w.mixed_fields`.
  void refresh(Walker& w) const;

  /// Mixed estimator <Psi_T|H|w>/<Psi_T|w>. Throws SimulationError when
  /// |overlap| < 1e-12.
  Complex local_energy(const Walker& w) const;

 private:
  struct SpinData {
    Eigen::VectorXcd det;
    Eigen::MatrixXcd fields;  ///< n_fields x n_strings
    Eigen::VectorXcd energy;  ///< one- plus same-spin two-body part per string
  };
  SpinData evaluate_spin(const Eigen::MatrixXcd& psi, const std::vector<std::vector<int>>& occ,
                         bool with_energy) const;

  const TrialWavefunction* trial_;
  int n_ = 0;
  double core_ = 0.0;
  Eigen::MatrixXd h1_;
  std::vector<Eigen::MatrixXd> chol_;
  Eigen::MatrixXcd lmat_;  ///< n_fields x N^2, row-major orbital pair index
};

/// Convenience form that builds a TrialEvaluator for a single call.
Complex local_energy(const TrialWavefunction& trial, const Walker& w, const IntegralSet& ints,
                     const CholeskyFactors& chol);

}  // namespace dqsci::afqmc
