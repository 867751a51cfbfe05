#include "dqsci/cholesky.hpp"

#include <algorithm>
#include <cmath>

#include "dqsci/error.hpp"

namespace dqsci {

double CholeskyFactors::reconstruct(int p, int q, int r, int s) const {
  double v = 0.0;
  for (const auto& l : vectors) v += l(p, q) * l(r, s);
  return v;
}

CholeskyFactors cholesky_factorize(const IntegralSet& ints, double threshold) {
  require(threshold > 0.0, "Cholesky threshold must be positive");
  const int n = ints.n_orbitals();
  const std::size_t nn = static_cast<std::size_t>(n) * n;

  CholeskyFactors out;
  out.threshold = threshold;
  out.n_orbitals = n;

  // Composite index pq = p*n + q runs over all ordered pairs, so every column
  // of the supermatrix is a symmetric N x N matrix.
  Eigen::VectorXd diag(nn);
  double max_initial = 0.0;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      diag(p * n + q) = ints.eri(p, q, p, q);
      max_initial = std::max(max_initial, std::abs(diag(p * n + q)));
    }
  const double negative_tol = 1e-10 * std::max(1.0, max_initial);

  std::vector<Eigen::VectorXd> cols;
  while (cols.size() < nn) {
    Eigen::Index pivot = 0;
    const double dmax = diag.maxCoeff(&pivot);
    const double dmin = diag.minCoeff();
    if (dmin < -negative_tol) throw NonPsdError(dmin);
    if (dmax <= threshold) break;

    const int pp = static_cast<int>(pivot) / n;
    const int pq = static_cast<int>(pivot) % n;
    Eigen::VectorXd col(nn);
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) col(r * n + s) = ints.eri(r, s, pp, pq);
    for (const auto& prev : cols) col -= prev(pivot) * prev;
    col /= std::sqrt(dmax);
    diag -= col.cwiseAbs2();
    // (pq) and (qp) index identical rows, so both are now exactly resolved.
    diag(pivot) = 0.0;
    diag(pq * n + pp) = 0.0;
    cols.push_back(std::move(col));
  }

  out.vectors.reserve(cols.size());
  for (const auto& c : cols) {
    Eigen::MatrixXd l(n, n);
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) l(r, s) = c(r * n + s);
    out.vectors.push_back(0.5 * (l + l.transpose()));
  }
  return out;
}

}  // namespace dqsci
