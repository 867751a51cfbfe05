#pragma once

#include <vector>

#include <Eigen/Dense>

#include "dqsci/afqmc/trial.hpp"
#include "dqsci/afqmc/walker.hpp"
#include "dqsci/cholesky.hpp"
#include "dqsci/integrals.hpp"

namespace dqsci::afqmc {

/// Split-operator short-time propagator for
///   H = C + sum_pq T_pq E_pq + 1/2 sum_g (L^g - vbar_g)^2
/// where T = h - 1/2 sum_g L^g L^g + sum_g vbar_g L^g and
/// C = E_core - 1/2 sum_g vbar_g^2.
struct Propagator {
  double dt = 0.0;
  /// exp(-dt/2 T)
  Eigen::MatrixXd half_one_body;
  std::vector<Eigen::MatrixXd> cholesky;
  /// Trial-density mean field vbar_g = tr(L^g rho_T).
  Eigen::VectorXd mean_field;
  double constant = 0.0;
  int taylor_order = 6;

  std::size_t n_fields() const noexcept { return cholesky.size(); }
};

/// Throws ContractViolation if dt <= 0 or the Cholesky threshold exceeds dt^2.
Propagator build_propagator(const IntegralSet& ints, const CholeskyFactors& chol,
                            const TrialWavefunction& trial, double dt);

/// psi <- exp(-dt/2 T) exp(i sqrt(dt) sum_g f_g L^g) exp(-dt/2 T) psi
void apply_propagator(const Propagator& p, Eigen::MatrixXcd& psi, const Eigen::VectorXcd& fields);

}  // namespace dqsci::afqmc
