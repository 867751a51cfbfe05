#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "config_document.hpp"
#include "dqsci/error.hpp"

using namespace dqsci;
using nlohmann::json;

namespace {

json parse(const std::string& text) {
  std::istringstream in(text);
  return cli::parse_config_document(in);
}

}  // namespace

TEST_CASE("config document reads sections, dotted keys and scalar types", "[cli]") {
  const auto doc = parse(R"(# run
fcidump = "a/b.FCIDUMP"   # trailing comment
variant.space = 'enlarged'

[selection]
epsilon = 1e-6
max_rounds = 4
pool_size = 1_000

[sampler]
shots = +200
source = "surrogate"
counts = "x#y"
)");
  CHECK(doc["fcidump"] == "a/b.FCIDUMP");
  CHECK(doc["variant"]["space"] == "enlarged");
  CHECK(doc["selection"]["epsilon"].get<double>() == 1e-6);
  CHECK(doc["selection"]["pool_size"] == 1000);
  CHECK(doc["sampler"]["shots"] == 200);
  CHECK(doc["sampler"]["counts"] == "x#y");

  const auto cfg = cli::config_from_document(doc);
  CHECK(cfg.space == pipeline::SpaceVariant::Enlarged);
  CHECK(cfg.selection.max_enlargement_rounds == 4);
  CHECK(cfg.selection.pool_size == 1000);
  CHECK(cfg.sampler.shots == 200);
  CHECK_FALSE(cfg.afqmc.has_value());
}

TEST_CASE("config document accepts inf and escapes", "[cli]") {
  const auto doc = parse("[selection]\nepsilon = inf\n[x]\ns = \"a\\\"b\\\\c\"\n");
  CHECK(std::isinf(doc["selection"]["epsilon"].get<double>()));
  CHECK(doc["x"]["s"] == "a\"b\\c");
}

TEST_CASE("config document errors carry line numbers", "[cli]") {
  const auto line_of = [](const std::string& text) {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("a = 1\nb = [1, 2]\n") == 2);
  CHECK(line_of("a = 1\na = 2\n") == 2);
  CHECK(line_of("\n\n[sec\n") == 3);
  CHECK(line_of("novalue\n") == 1);
  CHECK(line_of("s = \"open\n") == 1);
  CHECK(line_of("x = 12abc\n") == 1);
  CHECK(line_of("[[tables]]\n") == 1);
  CHECK(line_of("bad key = 1\n") == 1);
}

TEST_CASE("unknown keys and mistyped values are rejected", "[cli]") {
  CHECK_THROWS_AS(cli::config_from_document(parse("shots = 5\n")), ContractViolation);
  CHECK_THROWS_AS(cli::config_from_document(parse("[sampler]\nshots = \"many\"\n")), ContractViolation);
  CHECK_THROWS_AS(cli::config_from_document(parse("[sampler]\nshots = -1\n")), ContractViolation);
  CHECK_THROWS_AS(cli::config_from_document(parse("[afqmc]\nn_walkers = 2.5\n")), ContractViolation);
  CHECK_NOTHROW(cli::config_from_document(parse("[afqmc]\ndt = 1\n")));
  CHECK_NOTHROW(cli::config_from_document(parse("[sampler]\n")));
}

TEST_CASE("every echoed key is a flag and overrides convert types", "[cli]") {
  const auto keys = cli::config_keys();
  for (const char* k : {"fcidump", "sampler.shots", "selection.epsilon", "afqmc.dt",
                        "afqmc.equilibration_blocks", "variant.refinement", "cholesky_threshold"})
    CHECK(std::find(keys.begin(), keys.end(), k) != keys.end());

  json doc = parse("[sampler]\nshots = 10\n");
  cli::apply_override(doc, "sampler.shots", "20");
  cli::apply_override(doc, "selection.epsilon", "inf");
  cli::apply_override(doc, "afqmc.n_walkers", "8");
  cli::apply_override(doc, "variant.refinement", "qsci-afqmc");
  const auto cfg = cli::config_from_document(doc);
  CHECK(cfg.sampler.shots == 20);
  CHECK(std::isinf(cfg.selection.epsilon));
  REQUIRE(cfg.afqmc.has_value());
  CHECK(cfg.afqmc->n_walkers == 8);

  CHECK_THROWS_AS(cli::apply_override(doc, "sampler.shot", "1"), ContractViolation);
  CHECK_THROWS_AS(cli::apply_override(doc, "sampler.shots", "1.5"), ContractViolation);
  CHECK_THROWS_AS(cli::apply_override(doc, "afqmc.dt", "fast"), ContractViolation);
}

TEST_CASE("qsci-afqmc without an afqmc section gets default settings", "[cli]") {
  const auto cfg = cli::config_from_document(parse("[variant]\nrefinement = \"qsci-afqmc\"\n"));
  REQUIRE(cfg.afqmc.has_value());
  CHECK(cfg.afqmc->n_walkers == afqmc::AfqmcConfig{}.n_walkers);
}

TEST_CASE("echoed configuration reads back to the same configuration", "[cli]") {
  pipeline::PipelineConfig cfg;
  cfg.fcidump = "h.FCIDUMP";
  cfg.space = pipeline::SpaceVariant::Enlarged;
  cfg.refinement = pipeline::Refinement::QsciAfqmc;
  cfg.selection.epsilon = 1e-5;
  cfg.selection.max_enlargement_rounds = 3;
  cfg.sampler.seed = 123456789012345ULL;
  cfg.afqmc = afqmc::AfqmcConfig{};
  cfg.afqmc->dt = 0.0025;
  const auto echo = pipeline::to_json(cfg);
  CHECK(pipeline::to_json(cli::config_from_document(echo)) == echo);
}
