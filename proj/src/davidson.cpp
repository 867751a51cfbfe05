#include "dqsci/davidson.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "dqsci/error.hpp"

namespace dqsci {

void fix_sign_largest(Eigen::VectorXd& v) {
  if (v.size() == 0) return;
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (std::abs(v(i)) > std::abs(v(best)) * (1.0 + 1e-12)) best = i;
  if (v(best) < 0) v = -v;
}

EigenPair dense_lowest(const Eigen::MatrixXd& matrix) {
  require(matrix.rows() > 0 && matrix.rows() == matrix.cols(), "dense_lowest needs a square matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(matrix);
  if (eig.info() != Eigen::Success) throw SolverError("dense eigensolver failed", 0.0);
  EigenPair out;
  out.value = eig.eigenvalues()(0);
  out.vector = eig.eigenvectors().col(0);
  fix_sign_largest(out.vector);
  out.residual = (matrix * out.vector - out.value * out.vector).norm();
  return out;
}

namespace {

// Orthogonalizes t against the first k columns of basis, twice.
double orthogonalize(const Eigen::MatrixXd& basis, Eigen::Index k, Eigen::VectorXd& t) {
  for (int pass = 0; pass < 2; ++pass) {
    const Eigen::VectorXd overlap = basis.leftCols(k).transpose() * t;
    t.noalias() -= basis.leftCols(k) * overlap;
  }
  return t.norm();
}

}  // namespace

EigenPair davidson_lowest(const MatVec& apply, const Eigen::VectorXd& diagonal,
                          const DavidsonOptions& options, Eigen::VectorXd guess) {
  const Eigen::Index n = diagonal.size();
  require(n > 0, "Davidson on an empty operator");
  require(options.tol > 0.0, "Davidson tolerance must be positive");
  require(options.max_subspace >= 2, "Davidson subspace must hold at least two vectors");

  if (guess.size() == 0) {
    Eigen::Index imin = 0;
    diagonal.minCoeff(&imin);
    guess = Eigen::VectorXd::Unit(n, imin);
  }
  require(guess.size() == n, "Davidson guess has the wrong length");
  guess.normalize();

  const Eigen::Index max_sub = std::min<Eigen::Index>(options.max_subspace, n);
  Eigen::MatrixXd basis(n, max_sub);
  Eigen::MatrixXd sigma(n, max_sub);
  Eigen::Index k = 0;

  auto push = [&](const Eigen::VectorXd& v) {
    basis.col(k) = v;
    Eigen::VectorXd hv(n);
    apply(v, hv);
    sigma.col(k) = hv;
    ++k;
  };
  push(guess);

  EigenPair out;
  Eigen::VectorXd ritz = guess;
  Eigen::VectorXd previous;
  double residual = 0.0;
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    const Eigen::MatrixXd projected = basis.leftCols(k).transpose() * sigma.leftCols(k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (projected + projected.transpose()));
    const double theta = eig.eigenvalues()(0);
    const Eigen::VectorXd s = eig.eigenvectors().col(0);
    previous = ritz;
    ritz = basis.leftCols(k) * s;
    Eigen::VectorXd r = sigma.leftCols(k) * s - theta * ritz;
    residual = r.norm();
    out.value = theta;
    out.iterations = iter;
    if (residual <= options.tol || k == n) break;

    Eigen::VectorXd t(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      double denom = theta - diagonal(i);
      if (std::abs(denom) < 1e-8) denom = denom < 0 ? -1e-8 : 1e-8;
      t(i) = r(i) / denom;
    }

    if (k == max_sub) {
      // Collapse onto the current and previous Ritz vectors.
      const Eigen::VectorXd x = ritz.normalized();
      k = 0;
      push(x);
      Eigen::VectorXd p = previous;
      if (orthogonalize(basis, k, p) > 1e-8) push(p.normalized());
    }
    double tn = orthogonalize(basis, k, t);
    if (tn < 1e-12) {
      t = r;
      tn = orthogonalize(basis, k, t);
      if (tn < 1e-14) break;
    }
    push(t / tn);
  }
  if (residual > options.tol)
    throw SolverError("Davidson did not converge in " + std::to_string(options.max_iterations) +
                          " iterations",
                      residual);
  out.vector = ritz.normalized();
  fix_sign_largest(out.vector);
  Eigen::VectorXd hv(n);
  apply(out.vector, hv);
  out.residual = (hv - out.value * out.vector).norm();
  return out;
}

}  // namespace dqsci
