#include "dqsci/selection.hpp"

#include <cmath>
#include <unordered_map>

#include "dqsci/error.hpp"
#include "dqsci/slater_condon.hpp"

namespace dqsci {

DeterminantSpace cartesian_product(std::span<const SpinString> pool_alpha,
                                   std::span<const SpinString> pool_beta, int n_orbitals) {
  require(!pool_alpha.empty() && !pool_beta.empty(), "Cartesian product of an empty pool");
  const int na = pool_alpha.front().popcount();
  const int nb = pool_beta.front().popcount();
  for (const auto& s : pool_alpha)
    require(s.popcount() == na, "alpha pool mixes particle numbers");
  for (const auto& s : pool_beta) require(s.popcount() == nb, "beta pool mixes particle numbers");
  std::vector<Determinant> dets;
  dets.reserve(pool_alpha.size() * pool_beta.size());
  for (const auto& a : pool_alpha)
    for (const auto& b : pool_beta) dets.push_back({a, b});
  return DeterminantSpace(std::move(dets), n_orbitals, na, nb);
}

namespace {

using ScoreMap = std::unordered_map<Determinant, double, DeterminantHash>;

template <class F>
void for_each_connected(const Determinant& d, int n, F&& visit) {
  const SpinString full = n == 64 ? SpinString(~std::uint64_t{0})
                                  : SpinString((std::uint64_t{1} << n) - 1);
  auto singles = [&](const SpinString& s, auto&& emit) {
    const SpinString virt = full & (s ^ full);
    s.for_each_set([&](int i) {
      virt.for_each_set([&](int a) {
        SpinString t = s;
        t.reset(i).set(a);
        emit(t);
      });
    });
  };
  auto doubles = [&](const SpinString& s, auto&& emit) {
    const SpinString virt = full & (s ^ full);
    s.for_each_set([&](int i) {
      s.for_each_set([&](int j) {
        if (j <= i) return;
        virt.for_each_set([&](int a) {
          virt.for_each_set([&](int b) {
            if (b <= a) return;
            SpinString t = s;
            t.reset(i).reset(j).set(a).set(b);
            emit(t);
          });
        });
      });
    });
  };
  singles(d.alpha, [&](const SpinString& a) {
    visit(Determinant{a, d.beta});
    singles(d.beta, [&](const SpinString& b) { visit(Determinant{a, b}); });
  });
  singles(d.beta, [&](const SpinString& b) { visit(Determinant{d.alpha, b}); });
  doubles(d.alpha, [&](const SpinString& a) { visit(Determinant{a, d.beta}); });
  doubles(d.beta, [&](const SpinString& b) { visit(Determinant{d.alpha, b}); });
}

}  // namespace

DeterminantSpace heatbath_enlarge(const DeterminantSpace& space, const CiSolution& sol,
                                  const IntegralSet& ints, const SelectionConfig& cfg) {
  require(static_cast<std::size_t>(sol.coefficients.size()) == space.size(),
          "solution and space sizes differ");
  require(cfg.epsilon >= 0.0, "selection cutoff must be non-negative");
  if (std::isinf(cfg.epsilon) || space.empty()) return space;

  const std::size_t m = space.size();
  const int n = space.n_orbitals();
  std::vector<ScoreMap> partial(m);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::size_t k = 0; k < m; ++k) {
    const double ck = std::abs(sol.coefficients(static_cast<Eigen::Index>(k)));
    if (ck == 0.0) continue;
    auto& scores = partial[k];
    for_each_connected(space[k], n, [&](const Determinant& l) {
      if (space.contains(l)) return;
      const double score = std::abs(slater_condon(l, space[k], ints)) * ck;
      if (score <= cfg.epsilon) return;
      auto [it, inserted] = scores.try_emplace(l, score);
      if (!inserted && score > it->second) it->second = score;
    });
  }
  ScoreMap best;
  for (const auto& p : partial)
    for (const auto& [d, s] : p) {
      auto [it, inserted] = best.try_emplace(d, s);
      if (!inserted && s > it->second) it->second = s;
    }
  std::vector<Determinant> dets(space.begin(), space.end());
  for (const auto& [d, s] : best) dets.push_back(d);
  return DeterminantSpace(std::move(dets), n, space.n_alpha(), space.n_beta());
}

SelectionResult iterate_selection(const DeterminantSpace& space0, const IntegralSet& ints,
                                  const SelectionConfig& cfg, const SpaceSolver& solver) {
  require(!space0.empty(), "selection needs a nonempty starting space");
  const SpaceSolver solve =
      solver ? solver : [&ints](const DeterminantSpace& s) { return solve_space(s, ints); };
  SelectionResult out;
  out.space = space0;
  out.solution = solve(out.space);
  out.energies.push_back(out.solution.energy);
  out.sizes.push_back(out.space.size());
  for (int round = 0; round < cfg.max_enlargement_rounds; ++round) {
    auto next = heatbath_enlarge(out.space, out.solution, ints, cfg);
    if (next.size() == out.space.size()) break;
    out.space = std::move(next);
    out.solution = solve(out.space);
    out.energies.push_back(out.solution.energy);
    out.sizes.push_back(out.space.size());
    ++out.rounds;
  }
  return out;
}

}  // namespace dqsci
