#pragma once

#include "dqsci/determinant.hpp"
#include "dqsci/integrals.hpp"

namespace dqsci {

/// <bra|H|ket> by the Slater-Condon rules, core energy included on the
/// diagonal. Zero beyond double excitations. Throws ContractViolation when
/// the determinants belong to different (n_alpha, n_beta) sectors.
double slater_condon(const Determinant& bra, const Determinant& ket, const IntegralSet& ints);

/// <d|H|d>.
double diagonal_energy(const Determinant& d, const IntegralSet& ints);

}  // namespace dqsci
