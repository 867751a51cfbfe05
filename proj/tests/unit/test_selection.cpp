#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "dqsci/doci.hpp"
#include "dqsci/error.hpp"
#include "dqsci/fci.hpp"
#include "dqsci/selection.hpp"
#include "dqsci/slater_condon.hpp"
#include "fock_oracle.hpp"
#include "test_data.hpp"

using namespace dqsci;

namespace {

std::vector<SpinString> strings(std::initializer_list<const char*> text) {
  std::vector<SpinString> out;
  for (auto t : text) out.push_back(SpinString::from_string(t));
  return out;
}

DeterminantSpace hf_space(const IntegralSet& ints) {
  SpinString a;
  SpinString b;
  for (int k = 0; k < ints.n_alpha(); ++k) a.set(k);
  for (int k = 0; k < ints.n_beta(); ++k) b.set(k);
  return DeterminantSpace({{a, b}}, ints.n_orbitals(), ints.n_alpha(), ints.n_beta());
}

CiSolution unit_solution(const DeterminantSpace& s) {
  CiSolution sol;
  sol.space = s;
  sol.coefficients = Eigen::VectorXd::Ones(1);
  return sol;
}

}  // namespace

TEST_CASE("Cartesian product cardinality and seniority content", "[selection]") {
  const auto p3 = strings({"1100", "1010", "0110"});
  CHECK(cartesian_product(p3, p3, 4).size() == 9);
  const auto p1 = strings({"1100"});
  CHECK(cartesian_product(p1, p1, 4).size() == 1);

  const auto p2 = strings({"110", "101"});
  const auto s = cartesian_product(p2, p2, 3);
  REQUIRE(s.size() == 4);
  int zero = 0;
  int two = 0;
  for (const auto& d : s) (seniority(d) == 0 ? zero : two) += 1;
  CHECK(zero == 2);
  CHECK(two == 2);
  for (const auto& p : p2) CHECK(s.contains(Determinant{p, p}));

  CHECK_THROWS_AS(cartesian_product(strings({"110", "100"}), p2, 3), ContractViolation);
}

TEST_CASE("|P x P| = |P|^2 for duplicate-free pools", "[selection][property]") {
  std::mt19937_64 gen(12345);
  for (int t = 0; t < 200; ++t) {
    const int n = 4 + static_cast<int>(gen() % 9);
    const int k = 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(n - 1));
    const auto all = enumerate_strings(n, k);
    std::set<SpinString> pick;
    const std::size_t r = 1 + gen() % std::min<std::size_t>(all.size(), 40);
    while (pick.size() < r) pick.insert(all[gen() % all.size()]);
    const std::vector<SpinString> pool(pick.begin(), pick.end());
    REQUIRE(cartesian_product(pool, pool, n).size() == r * r);
  }
}

TEST_CASE("infinite cutoff leaves the space alone", "[selection]") {
  const auto ints = testing::load_fixture("h4_sto3g_1.00.FCIDUMP");
  const auto s = hf_space(ints);
  SelectionConfig cfg;
  cfg.epsilon = std::numeric_limits<double>::infinity();
  CHECK(heatbath_enlarge(s, unit_solution(s), ints, cfg) == s);
}

TEST_CASE("H4 from HF admits exactly the oracle's connected set", "[selection]") {
  const auto ints = testing::load_fixture("h4_sto3g_2.00.FCIDUMP");
  const auto s = hf_space(ints);
  SelectionConfig cfg;
  cfg.epsilon = 1e-6;
  const auto out = heatbath_enlarge(s, unit_solution(s), ints, cfg);

  std::set<Determinant> expected{s[0]};
  for (const auto& d : testing::full_sector(4, 2, 2))
    if (std::abs(testing::fock_matrix_element(d, s[0], ints)) > 1e-6) expected.insert(d);
  CHECK(std::set<Determinant>(out.begin(), out.end()) == expected);
}

TEST_CASE("enlarged determinants stay within two excitations and in sector", "[selection]") {
  const auto ints = testing::load_fixture("h6_sto3g_1.50.FCIDUMP");
  const auto doci = solve_doci(ints);
  const auto s0 = doci.space();
  const auto sol = solve_space(s0, ints);
  SelectionConfig cfg;
  cfg.epsilon = 1e-4;
  const auto out = heatbath_enlarge(s0, sol, ints, cfg);
  CHECK(out.includes(s0));
  CHECK(out.size() > s0.size());
  for (const auto& d : out) {
    CHECK(d.alpha.popcount() == 3);
    CHECK(d.beta.popcount() == 3);
    int best = 99;
    for (const auto& k : s0) best = std::min(best, excitation_degree(d, k));
    CHECK(best <= 2);
  }
}

TEST_CASE("cutoff monotonicity", "[selection][property]") {
  const auto ints = testing::load_fixture("h6_sto3g_2.40.FCIDUMP");
  const auto s0 = solve_doci(ints).space();
  const auto sol = solve_space(s0, ints);
  double previous_energy = std::numeric_limits<double>::infinity();
  DeterminantSpace previous = s0;
  for (double eps : {1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 1e-4}) {
    SelectionConfig cfg;
    cfg.epsilon = eps;
    const auto s = heatbath_enlarge(s0, sol, ints, cfg);
    CHECK(s.includes(previous));
    const double e = solve_space(s, ints).energy;
    CHECK(e <= previous_energy + 1e-12);
    previous = s;
    previous_energy = e;
  }
}

TEST_CASE("iterate_selection variants", "[selection]") {
  const auto ints = testing::load_fixture("h4_sto3g_1.00.FCIDUMP");
  const auto s0 = hf_space(ints);

  SelectionConfig fixed;
  fixed.epsilon = 0.0;
  fixed.max_enlargement_rounds = 0;
  auto r = iterate_selection(s0, ints, fixed);
  CHECK(r.space == s0);
  CHECK(r.energies.size() == 1);
  CHECK(r.rounds == 0);

  SelectionConfig full;
  full.epsilon = 0.0;
  full.max_enlargement_rounds = 10;
  r = iterate_selection(s0, ints, full);
  CHECK(std::abs(r.solution.energy - fci_oracle(ints)) <= 1e-10);
  for (std::size_t i = 1; i < r.energies.size(); ++i)
    CHECK(r.energies[i] <= r.energies[i - 1] + 1e-12);
  CHECK(r.rounds <= 5);

  // converged space is a fixed point
  SelectionConfig one = full;
  one.max_enlargement_rounds = 1;
  const auto again = iterate_selection(r.space, ints, one);
  CHECK(again.space == r.space);
  CHECK(again.rounds == 0);

  CHECK_THROWS_AS(iterate_selection(DeterminantSpace(4, 2, 2), ints, full), ContractViolation);
}

TEST_CASE("zero cutoff on a connected system reaches the full sector", "[selection]") {
  const auto ints = testing::load_fixture("h6_sto3g_1.50.FCIDUMP");
  SelectionConfig cfg;
  cfg.epsilon = 0.0;
  cfg.max_enlargement_rounds = 20;
  const auto r = iterate_selection(solve_doci(ints).space(), ints, cfg);
  // Spatial symmetry makes some H_lk vanish identically; every determinant
  // with nonzero weight is reachable.
  CHECK(std::abs(r.solution.energy - fci_oracle(ints)) <= 1e-10);
}

TEST_CASE("mismatched solution is rejected", "[selection]") {
  const auto ints = testing::load_fixture("h4_sto3g_1.00.FCIDUMP");
  const auto s = hf_space(ints);
  CiSolution bad;
  bad.coefficients = Eigen::VectorXd::Ones(2);
  SelectionConfig cfg;
  cfg.epsilon = 0.1;
  CHECK_THROWS_AS(heatbath_enlarge(s, bad, ints, cfg), ContractViolation);
}

TEST_CASE("space line format round trip", "[selection]") {
  const auto ints = testing::load_fixture("h4_sto3g_1.00.FCIDUMP");
  const auto s = full_space(ints);
  std::stringstream buf;
  buf << "# checkpoint\n";
  write_space(buf, s);
  const auto back = read_space(buf);
  CHECK(back == s);
  CHECK(back.checksum() == s.checksum());

  std::istringstream bad("1100|1100\n1010|110\n");
  CHECK_THROWS_AS(read_space(bad), ParseError);
  std::istringstream mixed("1100|1100\n1000|1100\n");
  CHECK_THROWS_AS(read_space(mixed), ParseError);
}
