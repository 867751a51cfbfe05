#include "dqsci/afqmc/trial.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "dqsci/error.hpp"

namespace dqsci::afqmc {

namespace {

std::vector<int> occupations(const SpinString& s) {
  std::vector<int> occ;
  s.for_each_set([&](int k) { occ.push_back(k); });
  return occ;
}

// <s with i->p | a+_p a_i | s>
int hop_phase(const SpinString& s, int i, int p) {
  const int lo = std::min(i, p);
  const int hi = std::max(i, p);
  const int between = s.count_below(hi) - s.count_below(lo + 1);
  return (between & 1) ? -1 : 1;
}

}  // namespace

TrialWavefunction::TrialWavefunction(const CiSolution& sol)
    : n_orbitals_(sol.space.n_orbitals()),
      n_alpha_(sol.space.n_alpha()),
      n_beta_(sol.space.n_beta()),
      energy_(sol.energy) {
  const auto& space = sol.space;
  require(!space.empty(), "trial wave function needs at least one determinant");
  require(static_cast<std::size_t>(sol.coefficients.size()) == space.size(),
          "trial coefficients do not match the space");
  require(std::abs(sol.coefficients.squaredNorm() - 1.0) <= 1e-8,
          "trial wave function is not normalized");

  std::unordered_map<SpinString, std::uint32_t> a_index;
  std::unordered_map<SpinString, std::uint32_t> b_index;
  std::unordered_map<Determinant, double, DeterminantHash> coeff_of;
  std::size_t best = 0;
  for (std::size_t k = 0; k < space.size(); ++k) {
    const auto& d = space[k];
    const double c = sol.coefficients(static_cast<Eigen::Index>(k));
    if (std::abs(c) > std::abs(sol.coefficients(static_cast<Eigen::Index>(best)))) best = k;
    if (c == 0.0) continue;
    auto [ia, new_a] = a_index.try_emplace(d.alpha, static_cast<std::uint32_t>(alpha_.size()));
    if (new_a) {
      alpha_.push_back(d.alpha);
      alpha_occ_.push_back(occupations(d.alpha));
    }
    auto [ib, new_b] = b_index.try_emplace(d.beta, static_cast<std::uint32_t>(beta_.size()));
    if (new_b) {
      beta_.push_back(d.beta);
      beta_occ_.push_back(occupations(d.beta));
    }
    terms_.push_back({ia->second, ib->second, c});
    coeff_of.emplace(d, c);
  }
  dominant_ = space[best];

  const int n = n_orbitals_;
  rdm_alpha_ = Eigen::MatrixXd::Zero(n, n);
  rdm_beta_ = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [d, c] : coeff_of) {
    auto accumulate = [&](const SpinString& s, bool alpha_channel, Eigen::MatrixXd& rdm) {
      s.for_each_set([&](int i) {
        rdm(i, i) += c * c;
        for (int p = 0; p < n; ++p) {
          if (s.test(p)) continue;
          SpinString t = s;
          t.reset(i).set(p);
          const Determinant other = alpha_channel ? Determinant{t, d.beta} : Determinant{d.alpha, t};
          auto it = coeff_of.find(other);
          if (it != coeff_of.end()) rdm(p, i) += it->second * c * hop_phase(s, i, p);
        }
      });
    };
    accumulate(d.alpha, true, rdm_alpha_);
    accumulate(d.beta, false, rdm_beta_);
  }
}

}  // namespace dqsci::afqmc
