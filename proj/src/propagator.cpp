#include "dqsci/afqmc/propagator.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "dqsci/error.hpp"

namespace dqsci::afqmc {

Propagator build_propagator(const IntegralSet& ints, const CholeskyFactors& chol,
                            const TrialWavefunction& trial, double dt) {
  require(dt > 0.0 && std::isfinite(dt), "time step must be positive");
  require(chol.threshold <= dt * dt, "Cholesky threshold must not exceed dt^2");
  require(chol.n_orbitals == ints.n_orbitals() && trial.n_orbitals() == ints.n_orbitals(),
          "propagator inputs describe different orbital spaces");

  Propagator p;
  p.dt = dt;
  p.cholesky = chol.vectors;
  p.mean_field.resize(static_cast<Eigen::Index>(chol.size()));
  const Eigen::MatrixXd rho = trial.density_alpha() + trial.density_beta();
  Eigen::MatrixXd t = ints.h1_matrix();
  double square = 0.0;
  for (std::size_t g = 0; g < chol.size(); ++g) {
    const auto& l = chol.vectors[g];
    const double v = l.cwiseProduct(rho).sum();
    p.mean_field(static_cast<Eigen::Index>(g)) = v;
    t += -0.5 * l * l + v * l;
    square += v * v;
  }
  p.constant = ints.core_energy() - 0.5 * square;

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (t + t.transpose()));
  const Eigen::VectorXd decay = (-0.5 * dt * eig.eigenvalues().array()).exp();
  p.half_one_body = eig.eigenvectors() * decay.asDiagonal() * eig.eigenvectors().transpose();
  return p;
}

void apply_propagator(const Propagator& p, Eigen::MatrixXcd& psi, const Eigen::VectorXcd& fields) {
  psi = p.half_one_body.cast<Complex>() * psi;
  if (p.n_fields() > 0) {
    const auto n = p.half_one_body.rows();
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(n, n);
    const Complex scale{0.0, std::sqrt(p.dt)};
    for (std::size_t g = 0; g < p.n_fields(); ++g)
      v += (scale * fields(static_cast<Eigen::Index>(g))) * p.cholesky[g].cast<Complex>();
    Eigen::MatrixXcd term = psi;
    for (int k = 1; k <= p.taylor_order; ++k) {
      term = v * term / static_cast<double>(k);
      psi += term;
    }
  }
  psi = p.half_one_body.cast<Complex>() * psi;
}

}  // namespace dqsci::afqmc
