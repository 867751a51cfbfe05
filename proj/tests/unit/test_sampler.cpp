#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "dqsci/error.hpp"
#include "dqsci/sampler.hpp"
#include "test_data.hpp"

using namespace dqsci;

namespace {

std::vector<ShotRecord> counts(const std::string& text) {
  std::istringstream in(text);
  return parse_counts(in);
}

ShotRecord rec(std::uint64_t mask, std::uint64_t c) { return {PairString{SpinString(mask)}, c}; }

std::size_t error_line(const std::string& text) {
  try {
    counts(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("count files", "[sampler]") {
  auto r = counts("110 5\n101 3\n");
  REQUIRE(r.size() == 2);
  CHECK(total_shots(r) == 8);
  // orbital 0 leftmost
  CHECK(std::find(r.begin(), r.end(), rec(0b011, 5)) != r.end());

  r = counts("# header\n110 2\n\n110 4  # again\n");
  REQUIRE(r.size() == 1);
  CHECK(r[0].count == 6);

  CHECK(counts("").empty());
}

TEST_CASE("count file errors name the line", "[sampler]") {
  CHECK(error_line("110 5\n10 3\n") == 2);
  CHECK(error_line("110 0\n") == 1);
  CHECK(error_line("110 -2\n") == 1);
  CHECK(error_line("110\n") == 1);
  CHECK(error_line("1a0 4\n") == 1);
  CHECK(error_line("110 4 4\n") == 1);
  CHECK(error_line("110 x\n") == 1);
  std::istringstream in("1100 3\n");
  CHECK_THROWS_AS(parse_counts(in, 3), ParseError);
  CHECK_THROWS_AS(load_counts("/nonexistent/counts.txt"), ParseError);
}

TEST_CASE("particle-number filter", "[sampler]") {
  const std::vector<ShotRecord> in{rec(0b011, 5), rec(0b001, 2), rec(0b111, 1)};
  auto f = filter_particle_number(in, 2);
  REQUIRE(f.records.size() == 1);
  CHECK(f.records[0] == rec(0b011, 5));
  CHECK(f.kept_shots == 5);
  CHECK(f.discarded_shots == 3);

  const std::vector<ShotRecord> good{rec(0b011, 5), rec(0b101, 2)};
  f = filter_particle_number(good, 2);
  CHECK(f.records == good);
  CHECK(f.discard_fraction() == 0.0);

  f = filter_particle_number(good, 1);
  CHECK(f.records.empty());
  CHECK(f.discard_fraction() == 1.0);
}

TEST_CASE("top_r ordering", "[sampler]") {
  const std::vector<ShotRecord> in{rec(0b110, 5), rec(0b011, 5), rec(0b101, 2)};
  auto top = top_r(in, 2);
  REQUIRE(top.size() == 2);
  CHECK(top[0].bits == SpinString(0b011));
  CHECK(top[1].bits == SpinString(0b110));

  top = top_r(in, 10);
  REQUIRE(top.size() == 3);
  CHECK(top[2].bits == SpinString(0b101));

  top = top_r({rec(0b110, 9)}, 3);
  REQUIRE(top.size() == 1);
  CHECK_THROWS_AS(top_r(in, 0), ContractViolation);
}

TEST_CASE("top_r ignores record order", "[sampler][property]") {
  std::mt19937 gen(1);
  for (int t = 0; t < 100; ++t) {
    std::vector<ShotRecord> in;
    for (std::uint64_t m = 0; m < 16; ++m)
      if (gen() % 2) in.push_back(rec(m, 1 + gen() % 4));
    if (in.empty()) continue;
    const auto ref = top_r(in, 5);
    std::shuffle(in.begin(), in.end(), gen);
    CHECK(top_r(in, 5) == ref);
  }
}

TEST_CASE("surrogate sampling", "[sampler]") {
  DociSolution single;
  single.n_orbitals = 3;
  single.basis = enumerate_seniority_zero(3, 1);
  single.amplitudes = Eigen::Vector3d(0.0, 1.0, 0.0);
  SamplerConfig cfg;
  cfg.shots = 1000;
  cfg.seed = 4;
  auto r = surrogate_sample(single, cfg);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == ShotRecord{single.basis[1], 1000});

  single.amplitudes = Eigen::Vector3d(0.6, 0.0, 0.8);
  CHECK(surrogate_sample(single, cfg) == surrogate_sample(single, cfg));
  CHECK(total_shots(surrogate_sample(single, cfg)) == 1000);
  cfg.seed = 5;
  CHECK(filter_particle_number(surrogate_sample(single, cfg), 1).discard_fraction() == 0.0);

  single.amplitudes = Eigen::Vector3d(0.6, 0.0, 0.81);
  CHECK_THROWS_AS(surrogate_sample(single, cfg), ContractViolation);
}

TEST_CASE("surrogate frequencies track the H2 DOCI distribution", "[sampler]") {
  const auto ints = testing::load_fixture("h2_sto3g_0.74.FCIDUMP");
  const auto w = solve_doci(ints);
  SamplerConfig cfg;
  cfg.shots = 100000;
  cfg.seed = 2024;
  const auto r = surrogate_sample(w, cfg);
  for (std::size_t i = 0; i < w.basis.size(); ++i) {
    const double p = w.amplitudes(static_cast<Eigen::Index>(i)) * w.amplitudes(static_cast<Eigen::Index>(i));
    std::uint64_t seen = 0;
    for (const auto& x : r)
      if (x.bitstring == w.basis[i]) seen = x.count;
    const double n = static_cast<double>(cfg.shots);
    const double sigma = std::sqrt(n * p * (1 - p));
    CHECK(std::abs(static_cast<double>(seen) - n * p) <= 5 * sigma);
  }
}
