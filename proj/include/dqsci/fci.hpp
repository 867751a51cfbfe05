#pragma once

#include <cstddef>

#include "dqsci/ci_solution.hpp"
#include "dqsci/determinant_space.hpp"
#include "dqsci/hamiltonian.hpp"
#include "dqsci/integrals.hpp"

namespace dqsci {

inline constexpr std::size_t kFciDimensionCap = 1'000'000;

/// C(N, n_alpha) * C(N, n_beta), saturating at SIZE_MAX.
std::size_t sector_dimension(int n_orbitals, int n_alpha, int n_beta);

/// Every determinant of the integral set's (n_alpha, n_beta) sector.
DeterminantSpace full_space(const IntegralSet& ints, std::size_t cap = kFciDimensionCap);

/// Exact ground state of the sector. Throws DimensionCapError above `cap`.
CiSolution fci_solution(const IntegralSet& ints, std::size_t cap = kFciDimensionCap,
                        const SolverOptions& options = {});

/// Exact ground-state energy of the sector; the test oracle for everything
/// downstream.
double fci_oracle(const IntegralSet& ints, std::size_t cap = kFciDimensionCap);

}  // namespace dqsci
