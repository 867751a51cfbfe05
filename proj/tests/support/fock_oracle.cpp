#include "fock_oracle.hpp"

#include <bit>
#include <random>

namespace dqsci::testing {

FockState apply_annihilation(FockState s, int mode) {
  const std::uint64_t bit = std::uint64_t{1} << mode;
  if (s.sign == 0 || !(s.occ & bit)) return {0, 0};
  const int below = std::popcount(s.occ & (bit - 1));
  return {s.occ & ~bit, (below % 2) ? -s.sign : s.sign};
}

FockState apply_creation(FockState s, int mode) {
  const std::uint64_t bit = std::uint64_t{1} << mode;
  if (s.sign == 0 || (s.occ & bit)) return {0, 0};
  const int below = std::popcount(s.occ & (bit - 1));
  return {s.occ | bit, (below % 2) ? -s.sign : s.sign};
}

std::uint64_t to_fock(const Determinant& d, int n_orbitals) {
  std::uint64_t occ = 0;
  for (int k = 0; k < n_orbitals; ++k) {
    if (d.alpha.test(k)) occ |= std::uint64_t{1} << k;
    if (d.beta.test(k)) occ |= std::uint64_t{1} << (k + n_orbitals);
  }
  return occ;
}

double fock_matrix_element(const Determinant& bra, const Determinant& ket, const IntegralSet& ints) {
  const int n = ints.n_orbitals();
  const std::uint64_t target = to_fock(bra, n);
  const FockState start{to_fock(ket, n), 1};
  double value = (target == start.occ) ? ints.core_energy() : 0.0;

  for (int sigma = 0; sigma < 2; ++sigma)
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        auto s = apply_annihilation(start, q + sigma * n);
        s = apply_creation(s, p + sigma * n);
        if (s.sign && s.occ == target) value += s.sign * ints.h1(p, q);
      }

  // 1/2 sum (pq|rs) a+_{p s} a+_{r t} a_{s t} a_{q s}
  for (int sigma = 0; sigma < 2; ++sigma)
    for (int tau = 0; tau < 2; ++tau)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
          for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) {
              const double g = ints.eri(p, q, r, s);
              if (g == 0.0) continue;
              auto st = apply_annihilation(start, q + sigma * n);
              st = apply_annihilation(st, s + tau * n);
              st = apply_creation(st, r + tau * n);
              st = apply_creation(st, p + sigma * n);
              if (st.sign && st.occ == target) value += 0.5 * st.sign * g;
            }
  return value;
}

Eigen::MatrixXd fock_hamiltonian(const std::vector<Determinant>& dets, const IntegralSet& ints) {
  const auto m = static_cast<Eigen::Index>(dets.size());
  Eigen::MatrixXd h(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      h(i, j) = fock_matrix_element(dets[static_cast<std::size_t>(i)],
                                    dets[static_cast<std::size_t>(j)], ints);
  return h;
}

std::vector<Determinant> full_sector(int n_orbitals, int n_alpha, int n_beta) {
  // Independent of enumerate_strings: plain scan over all masks.
  std::vector<SpinString> as;
  std::vector<SpinString> bs;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n_orbitals); ++m) {
    if (std::popcount(m) == n_alpha) as.emplace_back(m);
    if (std::popcount(m) == n_beta) bs.emplace_back(m);
  }
  std::vector<Determinant> out;
  for (const auto& a : as)
    for (const auto& b : bs) out.push_back({a, b});
  return out;
}

IntegralSet random_integrals(int n_orbitals, int n_alpha, int n_beta, unsigned seed, int rank) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  IntegralSet ints(n_orbitals, n_alpha, n_beta);
  ints.set_core_energy(u(gen));
  for (int p = 0; p < n_orbitals; ++p)
    for (int q = 0; q <= p; ++q) ints.set_h1(p, q, u(gen) - (p == q ? 1.0 : 0.0));
  if (rank <= 0) rank = n_orbitals * (n_orbitals + 1) / 2;
  std::vector<Eigen::MatrixXd> b;
  for (int k = 0; k < rank; ++k) {
    Eigen::MatrixXd m(n_orbitals, n_orbitals);
    for (int p = 0; p < n_orbitals; ++p)
      for (int q = 0; q <= p; ++q) m(p, q) = m(q, p) = 0.4 * u(gen);
    b.push_back(m);
  }
  for (int p = 0; p < n_orbitals; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r < n_orbitals; ++r)
        for (int s = 0; s <= r; ++s) {
          double v = 0.0;
          for (const auto& m : b) v += m(p, q) * m(r, s);
          ints.set_eri(p, q, r, s, v);
        }
  return ints;
}

std::map<std::uint64_t, std::complex<double>> expand_slater(const Eigen::MatrixXcd& alpha,
                                                            const Eigen::MatrixXcd& beta) {
  const auto n = static_cast<int>(alpha.rows());
  std::map<std::uint64_t, std::complex<double>> state{{0, 1.0}};
  auto create = [&](const Eigen::VectorXcd& v, int offset) {
    std::map<std::uint64_t, std::complex<double>> next;
    for (const auto& [occ, amp] : state)
      for (int p = 0; p < n; ++p) {
        const auto s = apply_creation({occ, 1}, p + offset);
        if (s.sign) next[s.occ] += static_cast<double>(s.sign) * v(p) * amp;
      }
    state = std::move(next);
  };
  for (Eigen::Index j = beta.cols(); j-- > 0;) create(beta.col(j), n);
  for (Eigen::Index i = alpha.cols(); i-- > 0;) create(alpha.col(i), 0);
  return state;
}

Eigen::MatrixXd fock_density(const std::vector<Determinant>& dets, const Eigen::VectorXd& c,
                             int n_orbitals, int sigma) {
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(n_orbitals, n_orbitals);
  for (std::size_t k = 0; k < dets.size(); ++k)
    for (std::size_t l = 0; l < dets.size(); ++l) {
      const std::uint64_t bra = to_fock(dets[k], n_orbitals);
      for (int p = 0; p < n_orbitals; ++p)
        for (int q = 0; q < n_orbitals; ++q) {
          auto s = apply_annihilation({to_fock(dets[l], n_orbitals), 1}, q + sigma * n_orbitals);
          s = apply_creation(s, p + sigma * n_orbitals);
          if (s.sign && s.occ == bra)
            rho(p, q) += c(static_cast<Eigen::Index>(k)) * c(static_cast<Eigen::Index>(l)) * s.sign;
        }
    }
  return rho;
}

}  // namespace dqsci::testing
