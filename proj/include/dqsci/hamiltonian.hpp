#pragma once

#include <cstddef>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "dqsci/ci_solution.hpp"
#include "dqsci/davidson.hpp"
#include "dqsci/determinant_space.hpp"
#include "dqsci/integrals.hpp"

namespace dqsci {

/// H projected onto a determinant space, stored as a full (both triangles)
/// sparse matrix whose (i,j) and (j,i) entries come from one evaluation.
class EffectiveHamiltonian {
 public:
  using Matrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

  EffectiveHamiltonian(DeterminantSpace space, Matrix matrix);

  std::size_t dimension() const noexcept { return space_.size(); }
  const DeterminantSpace& space() const noexcept { return space_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  const Eigen::VectorXd& diagonal() const noexcept { return diagonal_; }

  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix_); }

 private:
  DeterminantSpace space_;
  Matrix matrix_;
  Eigen::VectorXd diagonal_;
};

struct AssemblyOptions {
  /// Below this size every pair is screened directly; above it determinants
  /// are grouped by alpha string.
  std::size_t pairwise_below = 2000;
};

EffectiveHamiltonian build_heff(const DeterminantSpace& space, const IntegralSet& ints,
                                const AssemblyOptions& options = {});

struct SolverOptions {
  double tol = 1e-8;
  /// Dense diagonalization below this dimension, Davidson otherwise.
  std::size_t dense_below = 2000;
  int max_subspace = 32;
  int max_iterations = 2000;
};

/// Lowest eigenpair of `h`; residual <= tol, largest-magnitude coefficient
/// positive.
CiSolution solve_ground(const EffectiveHamiltonian& h, const SolverOptions& options = {});

/// Convenience: build_heff followed by solve_ground.
CiSolution solve_space(const DeterminantSpace& space, const IntegralSet& ints,
                       const SolverOptions& options = {});

}  // namespace dqsci
