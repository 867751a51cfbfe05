#pragma once

// Brute-force second-quantized reference. Determinants are mapped onto 2N
// spin orbitals (alpha 0..N-1, then beta N..2N-1) and the Hamiltonian is
// applied term by term with explicit creation/annihilation operators. Shares
// no code with the Slater-Condon implementation.

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "dqsci/determinant.hpp"
#include "dqsci/integrals.hpp"

namespace dqsci::testing {

/// Occupation vector over spin orbitals with a tracked sign; sign 0 means
/// the operator string annihilated the state.
struct FockState {
  std::uint64_t occ = 0;
  int sign = 1;
};

FockState apply_annihilation(FockState s, int mode);
FockState apply_creation(FockState s, int mode);
std::uint64_t to_fock(const Determinant& d, int n_orbitals);

/// <bra|H|ket> accumulated from every one- and two-body operator term.
double fock_matrix_element(const Determinant& bra, const Determinant& ket, const IntegralSet& ints);

/// H over the given determinant list, element by element.
Eigen::MatrixXd fock_hamiltonian(const std::vector<Determinant>& dets, const IntegralSet& ints);

/// Every determinant in the (n_alpha, n_beta) sector, canonical order.
std::vector<Determinant> full_sector(int n_orbitals, int n_alpha, int n_beta);

/// Random real Hamiltonian with a positive semidefinite two-electron tensor.
IntegralSet random_integrals(int n_orbitals, int n_alpha, int n_beta, unsigned seed,
                             int rank = 0);

/// Expands prod_i c+(alpha_i) prod_j c+(beta_j) |0>, with c+(v) = sum_p v_p a+_p,
/// into occupation-number amplitudes by repeated creation-operator action.
std::map<std::uint64_t, std::complex<double>> expand_slater(const Eigen::MatrixXcd& alpha,
                                                            const Eigen::MatrixXcd& beta);

/// <Psi|a+_{p sigma} a_{q sigma}|Psi> for Psi = sum_k c_k |dets[k]>.
Eigen::MatrixXd fock_density(const std::vector<Determinant>& dets, const Eigen::VectorXd& c,
                             int n_orbitals, int sigma);

}  // namespace dqsci::testing
