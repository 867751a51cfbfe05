#include "dqsci/fci.hpp"

#include <limits>

#include "dqsci/error.hpp"

namespace dqsci {

namespace {

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

}  // namespace

std::size_t sector_dimension(int n_orbitals, int n_alpha, int n_beta) {
  const std::size_t a = binomial(n_orbitals, n_alpha);
  const std::size_t b = binomial(n_orbitals, n_beta);
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a)
    return std::numeric_limits<std::size_t>::max();
  return a * b;
}

DeterminantSpace full_space(const IntegralSet& ints, std::size_t cap) {
  const std::size_t dim = sector_dimension(ints.n_orbitals(), ints.n_alpha(), ints.n_beta());
  if (dim > cap) throw DimensionCapError(dim, cap);
  const auto as = enumerate_strings(ints.n_orbitals(), ints.n_alpha());
  const auto bs = enumerate_strings(ints.n_orbitals(), ints.n_beta());
  std::vector<Determinant> dets;
  dets.reserve(dim);
  for (const auto& a : as)
    for (const auto& b : bs) dets.push_back({a, b});
  return DeterminantSpace(std::move(dets), ints.n_orbitals(), ints.n_alpha(), ints.n_beta());
}

CiSolution fci_solution(const IntegralSet& ints, std::size_t cap, const SolverOptions& options) {
  return solve_space(full_space(ints, cap), ints, options);
}

double fci_oracle(const IntegralSet& ints, std::size_t cap) {
  return fci_solution(ints, cap).energy;
}

}  // namespace dqsci
