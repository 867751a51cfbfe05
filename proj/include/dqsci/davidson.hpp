#pragma once

#include <functional>

#include <Eigen/Dense>

namespace dqsci {

struct DavidsonOptions {
  double tol = 1e-8;        ///< residual 2-norm
  int max_subspace = 32;    ///< collapse to the current Ritz pair beyond this
  int max_iterations = 2000;
};

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXd vector;
  double residual = 0.0;
  int iterations = 0;
};

using MatVec = std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& y)>;

/// Lowest eigenpair of a real symmetric operator by Davidson iteration with a
/// diagonal preconditioner. Starts from `guess` (or the unit vector at the
/// smallest diagonal entry when empty). Throws SolverError on non-convergence.
EigenPair davidson_lowest(const MatVec& apply, const Eigen::VectorXd& diagonal,
                          const DavidsonOptions& options = {}, Eigen::VectorXd guess = {});

/// Lowest eigenpair by full diagonalization.
EigenPair dense_lowest(const Eigen::MatrixXd& matrix);

/// Flips `v` so its largest-magnitude entry (first one on ties) is positive.
void fix_sign_largest(Eigen::VectorXd& v);

}  // namespace dqsci
