#pragma once

#include <Eigen/Dense>

#include "dqsci/determinant_space.hpp"

namespace dqsci {

/// Lowest eigenpair of H projected onto `space`; coefficients follow the
/// space ordering and are normalized to 1.
struct CiSolution {
  DeterminantSpace space;
  Eigen::VectorXd coefficients;
  double energy = 0.0;
  /// ||H c - E c||_2 at return.
  double residual = 0.0;
};

}  // namespace dqsci
