#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "dqsci/integrals.hpp"

namespace dqsci {

inline constexpr double kDefaultCholeskyThreshold = 1e-6;

/// Low-rank factorization (pq|rs) ~= sum_g L^g_pq L^g_rs with symmetric L^g.
struct CholeskyFactors {
  std::vector<Eigen::MatrixXd> vectors;
  double threshold = kDefaultCholeskyThreshold;
  int n_orbitals = 0;

  std::size_t size() const noexcept { return vectors.size(); }
  /// sum_g L^g_pq L^g_rs
  double reconstruct(int p, int q, int r, int s) const;
};

/// Pivoted incomplete Cholesky of the N^2 x N^2 supermatrix M[(pq),(rs)].
/// Stops when the largest residual diagonal drops to `threshold`, which also
/// bounds every residual element. Throws NonPsdError if a residual diagonal
/// goes negative beyond round-off.
CholeskyFactors cholesky_factorize(const IntegralSet& ints,
                                   double threshold = kDefaultCholeskyThreshold);

}  // namespace dqsci
