#include <catch_amalgamated.hpp>

#include <random>

#include "dqsci/determinant.hpp"
#include "dqsci/error.hpp"
#include "fock_oracle.hpp"

using namespace dqsci;

namespace {
Determinant det(const char* text) { return parse_determinant(text); }
}  // namespace

TEST_CASE("seniority counts singly occupied orbitals", "[determinants]") {
  CHECK(seniority(det("1100|1100")) == 0);
  CHECK(seniority(det("1010|0110")) == 2);
  CHECK(seniority(det("1111|0000")) == 4);
}

TEST_CASE("expand_pair doubles the occupation", "[determinants]") {
  const PairString p{SpinString::from_string("110")};
  CHECK(expand_pair(p) == det("110|110"));
  CHECK(expand_pair(PairString{}) == det("000|000"));
  for (std::uint64_t m = 0; m < 256; ++m) CHECK(seniority(expand_pair(PairString{SpinString(m)})) == 0);
}

TEST_CASE("excitation degree", "[determinants]") {
  CHECK(excitation_degree(det("1100|1100"), det("1100|1100")) == 0);
  CHECK(excitation_degree(det("1100|1100"), det("1010|1100")) == 1);
  CHECK(excitation_degree(det("1100|1100"), det("1010|0110")) == 2);
  CHECK_THROWS_AS(excitation_degree(det("1100|1100"), det("1000|1100")), ContractViolation);
}

TEST_CASE("excitation degree is a metric", "[determinants][property]") {
  const auto sector = testing::full_sector(5, 2, 3);
  std::mt19937 gen(3);
  std::uniform_int_distribution<std::size_t> pick(0, sector.size() - 1);
  for (int t = 0; t < 2000; ++t) {
    const auto& a = sector[pick(gen)];
    const auto& b = sector[pick(gen)];
    const auto& c = sector[pick(gen)];
    REQUIRE(excitation_degree(a, b) == excitation_degree(b, a));
    REQUIRE((excitation_degree(a, b) == 0) == (a == b));
    REQUIRE(excitation_degree(a, c) <= excitation_degree(a, b) + excitation_degree(b, c));
  }
}

TEST_CASE("text notation is orbital 0 first", "[determinants]") {
  const auto d = det("1100|1010");
  CHECK(d.alpha.test(0));
  CHECK(d.alpha.test(1));
  CHECK_FALSE(d.alpha.test(2));
  CHECK(d.beta.test(2));
  CHECK(to_string(d, 4) == "1100|1010");
  CHECK_THROWS_AS(parse_determinant("110|10"), ContractViolation);
  CHECK_THROWS_AS(parse_determinant("1100"), ContractViolation);
  CHECK_THROWS_AS(parse_determinant("1x00|1100"), ContractViolation);
}

TEST_CASE("string enumeration is ascending and complete", "[determinants]") {
  const auto s = enumerate_strings(3, 2);
  REQUIRE(s.size() == 3);
  CHECK(s[0] == SpinString(0b011));
  CHECK(s[1] == SpinString(0b101));
  CHECK(s[2] == SpinString(0b110));
  CHECK(enumerate_strings(6, 3).size() == 20);
  CHECK(enumerate_strings(4, 0).size() == 1);
  CHECK(enumerate_strings(64, 64).size() == 1);
  CHECK(enumerate_strings(12, 6).size() == 924);
  CHECK_THROWS_AS(enumerate_strings(3, 4), ContractViolation);
}

TEST_CASE("multi-word strings", "[determinants]") {
  WideSpinString w;
  w.set(3).set(70).set(127);
  CHECK(w.popcount() == 3);
  CHECK(w.count_below(71) == 2);
  CHECK(w.lowest() == 3);
  WideSpinString hi;
  hi.set(64);
  WideSpinString lo;
  lo.set(63);
  CHECK(lo < hi);
  CHECK((w ^ w).none());
  CHECK(WideSpinString::from_string(w.to_string(128)) == w);
  CHECK_FALSE(w.fits(100));
  CHECK(w.fits(128));
}
