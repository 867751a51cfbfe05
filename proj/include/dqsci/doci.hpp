#pragma once

#include <vector>

#include <Eigen/Dense>

#include "dqsci/determinant.hpp"
#include "dqsci/determinant_space.hpp"
#include "dqsci/hamiltonian.hpp"
#include "dqsci/integrals.hpp"

namespace dqsci {

/// Ground state of H restricted to seniority-zero determinants.
struct DociSolution {
  int n_orbitals = 0;
  std::vector<PairString> basis;  ///< ascending numeric order
  Eigen::VectorXd amplitudes;     ///< unit 2-norm, aligned with `basis`
  double energy = 0.0;

  /// The same state as a CI vector over expanded determinants.
  DeterminantSpace space() const;
};

/// All C(N, n_pairs) pair strings in ascending numeric order.
std::vector<PairString> enumerate_seniority_zero(int n_orbitals, int n_pairs);

/// Exact DOCI. Matrix elements come from slater_condon on expanded pair
/// strings. A degenerate ground level is resolved by taking the vector of the
/// eigenspace with the largest leading (first basis) coefficient, positive.
/// Throws UnsupportedSector unless n_alpha == n_beta.
DociSolution solve_doci(const IntegralSet& ints, const SolverOptions& options = {});

}  // namespace dqsci
