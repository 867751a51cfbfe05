#include "dqsci/hamiltonian.hpp"

#include <algorithm>
#include <vector>

#include "dqsci/error.hpp"
#include "dqsci/slater_condon.hpp"

namespace dqsci {

EffectiveHamiltonian::EffectiveHamiltonian(DeterminantSpace space, Matrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  require(static_cast<std::size_t>(matrix_.rows()) == space_.size() &&
              matrix_.rows() == matrix_.cols(),
          "effective Hamiltonian size does not match its space");
  diagonal_ = matrix_.diagonal();
}

void EffectiveHamiltonian::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
  y.noalias() = matrix_ * x;
}

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

void add_pair(Triplets& out, std::size_t i, std::size_t j, double v) {
  if (v == 0.0) return;
  const auto ii = static_cast<Eigen::Index>(i);
  const auto jj = static_cast<Eigen::Index>(j);
  out.emplace_back(ii, jj, v);
  out.emplace_back(jj, ii, v);
}

Triplets pairwise(const DeterminantSpace& space, const IntegralSet& ints) {
  const std::size_t m = space.size();
  std::vector<Triplets> rows(m);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t i = 0; i < m; ++i) {
    const auto& di = space[i];
    for (std::size_t j = i + 1; j < m; ++j) {
      const auto& dj = space[j];
      if ((di.alpha ^ dj.alpha).popcount() + (di.beta ^ dj.beta).popcount() > 4) continue;
      add_pair(rows[i], i, j, slater_condon(di, dj, ints));
    }
  }
  Triplets all;
  for (auto& r : rows) all.insert(all.end(), r.begin(), r.end());
  return all;
}

// Determinants are sorted by alpha first, so equal-alpha runs are contiguous
// and sorted by beta. Pairs are found per connected pair of alpha groups.
Triplets grouped(const DeterminantSpace& space, const IntegralSet& ints) {
  struct Group {
    SpinString alpha;
    std::size_t begin;
    std::size_t end;
  };
  std::vector<Group> groups;
  for (std::size_t k = 0; k < space.size(); ++k) {
    if (groups.empty() || groups.back().alpha != space[k].alpha)
      groups.push_back({space[k].alpha, k, k + 1});
    else
      groups.back().end = k + 1;
  }

  const std::size_t ng = groups.size();
  std::vector<Triplets> per_group(ng);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::size_t g = 0; g < ng; ++g) {
    auto& out = per_group[g];
    const auto& ga = groups[g];
    for (std::size_t i = ga.begin; i < ga.end; ++i)
      for (std::size_t j = i + 1; j < ga.end; ++j)
        if ((space[i].beta ^ space[j].beta).popcount() <= 4)
          add_pair(out, i, j, slater_condon(space[i], space[j], ints));

    for (std::size_t h = g + 1; h < ng; ++h) {
      const auto& gb = groups[h];
      const int alpha_degree = (ga.alpha ^ gb.alpha).popcount() / 2;
      if (alpha_degree > 2) continue;
      if (alpha_degree == 2) {
        const auto first = space.dets().begin();
        for (std::size_t i = ga.begin; i < ga.end; ++i) {
          const Determinant target{gb.alpha, space[i].beta};
          auto it = std::lower_bound(first + static_cast<std::ptrdiff_t>(gb.begin),
                                     first + static_cast<std::ptrdiff_t>(gb.end), target);
          if (it != first + static_cast<std::ptrdiff_t>(gb.end) && *it == target) {
            const auto j = static_cast<std::size_t>(it - first);
            add_pair(out, i, j, slater_condon(space[i], space[j], ints));
          }
        }
      } else {
        for (std::size_t i = ga.begin; i < ga.end; ++i)
          for (std::size_t j = gb.begin; j < gb.end; ++j)
            if ((space[i].beta ^ space[j].beta).popcount() <= 2)
              add_pair(out, i, j, slater_condon(space[i], space[j], ints));
      }
    }
  }
  Triplets all;
  for (auto& t : per_group) all.insert(all.end(), t.begin(), t.end());
  return all;
}

}  // namespace

EffectiveHamiltonian build_heff(const DeterminantSpace& space, const IntegralSet& ints,
                                const AssemblyOptions& options) {
  require(!space.empty(), "cannot build H_eff over an empty space");
  require(space.n_orbitals() == ints.n_orbitals(), "space and integrals disagree on orbital count");
  require(space.n_alpha() == ints.n_alpha() && space.n_beta() == ints.n_beta(),
          "space sector differs from the integral set's electron counts");

  Triplets triplets =
      space.size() < options.pairwise_below ? pairwise(space, ints) : grouped(space, ints);
  for (std::size_t k = 0; k < space.size(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    triplets.emplace_back(kk, kk, diagonal_energy(space[k], ints));
  }
  const auto m = static_cast<Eigen::Index>(space.size());
  EffectiveHamiltonian::Matrix matrix(m, m);
  matrix.setFromTriplets(triplets.begin(), triplets.end());
  matrix.makeCompressed();
  return EffectiveHamiltonian(space, std::move(matrix));
}

CiSolution solve_ground(const EffectiveHamiltonian& h, const SolverOptions& options) {
  require(h.dimension() >= 1, "solve_ground needs a nonempty Hamiltonian");
  require(options.tol > 0.0, "solver tolerance must be positive");
  EigenPair pair;
  if (h.dimension() < options.dense_below) {
    pair = dense_lowest(h.dense());
  } else {
    DavidsonOptions dav;
    dav.tol = options.tol;
    dav.max_subspace = options.max_subspace;
    dav.max_iterations = options.max_iterations;
    pair = davidson_lowest([&h](const Eigen::VectorXd& x, Eigen::VectorXd& y) { h.apply(x, y); },
                           h.diagonal(), dav);
  }
  if (pair.residual > options.tol)
    throw SolverError("ground state not converged to requested tolerance", pair.residual);
  CiSolution out;
  out.space = h.space();
  out.coefficients = std::move(pair.vector);
  out.energy = pair.value;
  out.residual = pair.residual;
  return out;
}

CiSolution solve_space(const DeterminantSpace& space, const IntegralSet& ints,
                       const SolverOptions& options) {
  return solve_ground(build_heff(space, ints), options);
}

}  // namespace dqsci
