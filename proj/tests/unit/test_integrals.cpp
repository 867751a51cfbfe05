#include <catch_amalgamated.hpp>

#include <array>
#include <random>
#include <sstream>

#include "dqsci/error.hpp"
#include "dqsci/integrals.hpp"
#include "fock_oracle.hpp"
#include "test_data.hpp"

using namespace dqsci;
using Catch::Matchers::WithinAbs;

namespace {

IntegralSet parse(const std::string& text) {
  std::istringstream in(text);
  return parse_fcidump(in);
}

const std::array<std::array<int, 4>, 8> kPerms = {{{0, 1, 2, 3},
                                                   {1, 0, 2, 3},
                                                   {0, 1, 3, 2},
                                                   {1, 0, 3, 2},
                                                   {2, 3, 0, 1},
                                                   {3, 2, 0, 1},
                                                   {2, 3, 1, 0},
                                                   {3, 2, 1, 0}}};

}  // namespace

TEST_CASE("single orbital FCIDUMP maps fields directly", "[integrals]") {
  const auto ints = parse(" &FCI NORB=1,NELEC=2,MS2=0,\n &END\n"
                          "0.5 1 1 1 1\n-1.0 1 1 0 0\n0.3 0 0 0 0\n");
  REQUIRE(ints.n_orbitals() == 1);
  REQUIRE(ints.n_alpha() == 1);
  REQUIRE(ints.n_beta() == 1);
  CHECK(ints.h1(0, 0) == -1.0);
  CHECK(ints.eri(0, 0, 0, 0) == 0.5);
  CHECK(ints.core_energy() == 0.3);
}

TEST_CASE("core-only FCIDUMP gives zero integrals", "[integrals]") {
  const auto ints = parse("&FCI NORB=2, NELEC=2, MS2=0 /\n0.0 0 0 0 0\n");
  REQUIRE(ints.n_orbitals() == 2);
  CHECK(ints.h1_matrix().isZero());
  for (double v : ints.eri_packed()) CHECK(v == 0.0);
}

TEST_CASE("header variants and ignored fields", "[integrals]") {
  const auto ints = parse("&FCI NORB=3,NELEC=3,MS2=1,\n ORBSYM=1,2,\n 3,\n ISYM=1,\n/\n"
                          "1.5D-01 1 2 3 3\n  \n-2.0 3 3 0 0\n1.0 2 0 0 0\n");
  CHECK(ints.n_alpha() == 2);
  CHECK(ints.n_beta() == 1);
  CHECK(ints.eri(2, 2, 1, 0) == 0.15);
  CHECK(ints.h1(2, 2) == -2.0);
}

TEST_CASE("FCIDUMP errors carry the line number", "[integrals]") {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("&FCI NORB=2,NELEC=2 &END\n0.1 1 1 1 1\n0.2 1 3 1 1\n") == 3);
  CHECK(line_of("&FCI NORB=2,NELEC=2 &END\nabc 1 1 1 1\n") == 2);
  CHECK(line_of("&FCI NORB=2,NELEC=2 &END\n0.1 1 1 1\n") == 2);
  CHECK(line_of("&FCI NORB=2,NELEC=2 &END\n0.1 1 0 1 0\n") == 2);
  CHECK(line_of("\n&FCI NELEC=2 &END\n") == 2);
  CHECK(line_of("&FCI NORB=x,NELEC=2 &END\n") == 1);
  CHECK_THROWS_AS(parse("NORB=2\n"), ParseError);
  CHECK_THROWS_AS(parse("&FCI NORB=2,NELEC=2\n"), ParseError);
}

TEST_CASE("H2 fixture resolves all eight permutations", "[integrals]") {
  const auto ints = testing::load_fixture("h2_sto3g_0.74.FCIDUMP");
  REQUIRE(ints.n_orbitals() == 2);
  REQUIRE(ints.n_alpha() == 1);
  // data line "0.181210462015197    2    1    2    1"
  const std::array<int, 4> idx{0, 1, 0, 1};
  for (const auto& perm : kPerms)
    CHECK(ints.eri(idx[perm[0]], idx[perm[1]], idx[perm[2]], idx[perm[3]]) == 0.181210462015197);
  CHECK(ints.h1(0, 1) == ints.h1(1, 0));
}

TEST_CASE("get_eri symmetry and defaults", "[integrals]") {
  IntegralSet ints(4, 2, 2);
  ints.set_eri(0, 1, 2, 3, 0.7);
  CHECK(ints.eri(3, 2, 1, 0) == 0.7);
  CHECK(ints.eri(0, 0, 1, 1) == 0.0);
  CHECK_THROWS_AS(ints.eri(0, 0, 4, 0), ContractViolation);
  CHECK_THROWS_AS(ints.h1(-1, 0), ContractViolation);
}

TEST_CASE("random tensors read back identically under every permutation", "[integrals][property]") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_int_distribution<int> pick(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    IntegralSet ints(5, 2, 2);
    std::array<int, 4> idx{pick(gen), pick(gen), pick(gen), pick(gen)};
    const double v = u(gen);
    ints.set_eri(idx[0], idx[1], idx[2], idx[3], v);
    for (const auto& perm : kPerms)
      REQUIRE(ints.eri(idx[perm[0]], idx[perm[1]], idx[perm[2]], idx[perm[3]]) == v);
  }
}

TEST_CASE("FCIDUMP write/parse round trip", "[integrals][property]") {
  for (unsigned seed = 1; seed <= 5; ++seed) {
    const auto ints = testing::random_integrals(4, 2, 1, seed);
    std::stringstream buf;
    write_fcidump(buf, ints);
    const auto back = parse_fcidump(buf);
    REQUIRE(back.n_orbitals() == 4);
    REQUIRE(back.n_alpha() == 2);
    REQUIRE(back.n_beta() == 1);
    CHECK(back.core_energy() == ints.core_energy());
    CHECK(back.h1_matrix() == ints.h1_matrix());
    const auto a = ints.eri_packed();
    const auto b = back.eri_packed();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  }
}
