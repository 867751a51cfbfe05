#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "dqsci/ci_solution.hpp"
#include "dqsci/determinant_space.hpp"
#include "dqsci/hamiltonian.hpp"
#include "dqsci/integrals.hpp"

namespace dqsci {

struct SelectionConfig {
  /// Number of sampled pair strings kept for the pools; 0 keeps all of them.
  std::size_t pool_size = 0;
  /// Importance cutoff in Hartree; +inf disables enlargement.
  double epsilon = std::numeric_limits<double>::infinity();
  int max_enlargement_rounds = 0;
};

/// Every alpha/beta combination of the two pools. Throws ContractViolation if
/// a pool mixes popcounts.
DeterminantSpace cartesian_product(std::span<const SpinString> pool_alpha,
                                   std::span<const SpinString> pool_beta, int n_orbitals);

/// Adds every single or double excitation l of the space (same sector) whose
/// score max_k |H_lk c_k| exceeds cfg.epsilon. Returns a superset of `space`.
DeterminantSpace heatbath_enlarge(const DeterminantSpace& space, const CiSolution& sol,
                                  const IntegralSet& ints, const SelectionConfig& cfg);

using SpaceSolver = std::function<CiSolution(const DeterminantSpace&)>;

struct SelectionResult {
  DeterminantSpace space;
  CiSolution solution;
  std::vector<double> energies;      ///< one per diagonalization, first on space0
  std::vector<std::size_t> sizes;    ///< space size at each diagonalization
  int rounds = 0;                    ///< enlargements that added determinants
};

/// Alternates solve and enlarge until nothing is added or
/// cfg.max_enlargement_rounds is reached. With zero rounds this is a plain
/// solve on `space0`.
SelectionResult iterate_selection(const DeterminantSpace& space0, const IntegralSet& ints,
                                  const SelectionConfig& cfg, const SpaceSolver& solver = {});

}  // namespace dqsci
