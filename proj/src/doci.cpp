#include "dqsci/doci.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "dqsci/error.hpp"

namespace dqsci {

DeterminantSpace DociSolution::space() const {
  std::vector<Determinant> dets;
  dets.reserve(basis.size());
  for (const auto& p : basis) dets.push_back(expand_pair(p));
  const int np = basis.empty() ? 0 : basis.front().n_pairs();
  return DeterminantSpace(std::move(dets), n_orbitals, np, np);
}

std::vector<PairString> enumerate_seniority_zero(int n_orbitals, int n_pairs) {
  if (n_pairs < 0 || n_pairs > n_orbitals)
    throw ContractViolation("cannot place " + std::to_string(n_pairs) + " pairs in " +
                            std::to_string(n_orbitals) + " orbitals");
  std::vector<PairString> out;
  for (const auto& s : enumerate_strings(n_orbitals, n_pairs)) out.push_back(PairString{s});
  return out;
}

namespace {

// Lowest eigenvector; within a degenerate lowest level, the normalized
// projection of the first basis vector with nonzero weight.
Eigen::VectorXd lowest_with_leading_rule(const Eigen::MatrixXd& h, double& energy) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  if (eig.info() != Eigen::Success) throw SolverError("dense eigensolver failed", 0.0);
  const auto& values = eig.eigenvalues();
  energy = values(0);
  const double tol = 1e-10 * std::max(1.0, std::abs(energy));
  Eigen::Index mult = 1;
  while (mult < values.size() && values(mult) - values(0) < tol) ++mult;
  const Eigen::MatrixXd level = eig.eigenvectors().leftCols(mult);
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    Eigen::VectorXd v = level * level.row(i).transpose();
    if (v.norm() > 1e-8) {
      v.normalize();
      if (v(i) < 0) v = -v;
      return v;
    }
  }
  return level.col(0);
}

}  // namespace

DociSolution solve_doci(const IntegralSet& ints, const SolverOptions& options) {
  if (ints.n_alpha() != ints.n_beta())
    throw UnsupportedSector("DOCI needs a closed-shell sector (n_alpha == n_beta), got (" +
                            std::to_string(ints.n_alpha()) + ", " +
                            std::to_string(ints.n_beta()) + ")");
  DociSolution out;
  out.n_orbitals = ints.n_orbitals();
  out.basis = enumerate_seniority_zero(ints.n_orbitals(), ints.n_alpha());
  const auto h = build_heff(out.space(), ints);
  if (h.dimension() < options.dense_below) {
    out.amplitudes = lowest_with_leading_rule(h.dense(), out.energy);
  } else {
    auto sol = solve_ground(h, options);
    out.amplitudes = std::move(sol.coefficients);
    out.energy = sol.energy;
    for (Eigen::Index i = 0; i < out.amplitudes.size(); ++i)
      if (std::abs(out.amplitudes(i)) > 1e-12) {
        if (out.amplitudes(i) < 0) out.amplitudes = -out.amplitudes;
        break;
      }
  }
  return out;
}

}  // namespace dqsci
