#include "dqsci/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>

#include "dqsci/doci.hpp"
#include "dqsci/error.hpp"
#include "dqsci/fci.hpp"
#include "dqsci/integrals.hpp"
#include "dqsci/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#ifndef DQSCI_VERSION
#define DQSCI_VERSION "unknown"
#endif

namespace dqsci::pipeline {

using nlohmann::json;

std::string version() { return DQSCI_VERSION; }

std::string to_string(SpaceVariant v) { return v == SpaceVariant::Fixed ? "fixed" : "enlarged"; }
std::string to_string(Refinement r) {
  return r == Refinement::QsciOnly ? "qsci-only" : "qsci-afqmc";
}

SpaceVariant parse_space_variant(const std::string& s) {
  if (s == "fixed") return SpaceVariant::Fixed;
  if (s == "enlarged") return SpaceVariant::Enlarged;
  throw ContractViolation("unknown space variant '" + s + "' (expected fixed or enlarged)");
}

Refinement parse_refinement(const std::string& s) {
  if (s == "qsci-only") return Refinement::QsciOnly;
  if (s == "qsci-afqmc") return Refinement::QsciAfqmc;
  throw ContractViolation("unknown refinement '" + s + "' (expected qsci-only or qsci-afqmc)");
}

void PipelineConfig::validate_settings() const {
  require(!fcidump.empty(), "fcidump path is required");
  require(sampler.source == SamplerConfig::Source::File || sampler.shots >= 1,
          "sampler.shots must be >= 1");
  require(sampler.source == SamplerConfig::Source::Surrogate || !sampler.counts_path.empty(),
          "sampler.counts is required when sampler.source = file");
  require(cholesky_threshold > 0.0, "cholesky_threshold must be positive");
  if (space == SpaceVariant::Enlarged) {
    require(std::isfinite(selection.epsilon) && selection.epsilon >= 0.0,
            "the enlarged variant needs a finite selection.epsilon >= 0");
    require(selection.max_enlargement_rounds >= 1,
            "the enlarged variant needs selection.max_rounds >= 1");
  } else {
    require(!std::isfinite(selection.epsilon),
            "the fixed variant does not enlarge; unset selection.epsilon or use enlarged");
  }
  if (refinement == Refinement::QsciAfqmc) {
    require(afqmc.has_value(), "the qsci-afqmc variant needs an afqmc section");
    afqmc->validate();
  }
}

void PipelineConfig::validate() const {
  validate_settings();
  require(std::filesystem::exists(fcidump), "FCIDUMP not found: " + fcidump.string());
  if (sampler.source == SamplerConfig::Source::File)
    require(std::filesystem::exists(sampler.counts_path),
            "count file not found: " + sampler.counts_path.string());
}

namespace {

json afqmc_to_json(const afqmc::AfqmcConfig& a) {
  return {{"dt", a.dt},
          {"steps_per_block", a.steps_per_block},
          {"n_blocks", a.n_blocks},
          {"n_walkers", a.n_walkers},
          {"seed", a.seed},
          {"pop_control_period", a.pop_control_period},
          {"equilibration_blocks", a.resolved_equilibration()},
          {"orthogonalization_period", a.orthogonalization_period}};
}

afqmc::AfqmcConfig afqmc_from_json(const json& j) {
  afqmc::AfqmcConfig a;
  a.dt = j.value("dt", a.dt);
  a.steps_per_block = j.value("steps_per_block", a.steps_per_block);
  a.n_blocks = j.value("n_blocks", a.n_blocks);
  a.n_walkers = j.value("n_walkers", a.n_walkers);
  a.seed = j.value("seed", a.seed);
  a.pop_control_period = j.value("pop_control_period", a.pop_control_period);
  if (j.contains("equilibration_blocks") && !j["equilibration_blocks"].is_null())
    a.equilibration_blocks = j["equilibration_blocks"].get<int>();
  a.orthogonalization_period = j.value("orthogonalization_period", a.orthogonalization_period);
  return a;
}

json optional_number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json to_json(const PipelineConfig& cfg) {
  const bool file = cfg.sampler.source == SamplerConfig::Source::File;
  return {{"fcidump", cfg.fcidump.string()},
          {"variant", {{"space", to_string(cfg.space)}, {"refinement", to_string(cfg.refinement)}}},
          {"sampler",
           {{"source", file ? "file" : "surrogate"},
            {"shots", cfg.sampler.shots},
            {"seed", cfg.sampler.seed},
            {"counts", cfg.sampler.counts_path.string()}}},
          {"selection",
           {{"pool_size", cfg.selection.pool_size},
            {"epsilon", optional_number(cfg.selection.epsilon)},
            {"max_rounds", cfg.selection.max_enlargement_rounds}}},
          {"afqmc", cfg.afqmc ? afqmc_to_json(*cfg.afqmc) : json(nullptr)},
          {"cholesky_threshold", cfg.cholesky_threshold},
          {"output", cfg.output.string()},
          {"trace_output", cfg.trace_output.string()}};
}

PipelineConfig config_from_json(const json& j) {
  PipelineConfig cfg;
  cfg.fcidump = j.value("fcidump", std::string{});
  if (j.contains("variant")) {
    const auto& v = j["variant"];
    cfg.space = parse_space_variant(v.value("space", to_string(cfg.space)));
    cfg.refinement = parse_refinement(v.value("refinement", to_string(cfg.refinement)));
  }
  if (j.contains("sampler")) {
    const auto& s = j["sampler"];
    const std::string source = s.value("source", std::string{"surrogate"});
    require(source == "surrogate" || source == "file",
            "sampler.source must be surrogate or file, got '" + source + "'");
    cfg.sampler.source = source == "file" ? SamplerConfig::Source::File : SamplerConfig::Source::Surrogate;
    cfg.sampler.shots = s.value("shots", cfg.sampler.shots);
    cfg.sampler.seed = s.value("seed", cfg.sampler.seed);
    cfg.sampler.counts_path = s.value("counts", std::string{});
  }
  if (j.contains("selection")) {
    const auto& s = j["selection"];
    cfg.selection.pool_size = s.value("pool_size", cfg.selection.pool_size);
    if (s.contains("epsilon") && !s["epsilon"].is_null()) cfg.selection.epsilon = s["epsilon"].get<double>();
    cfg.selection.max_enlargement_rounds = s.value("max_rounds", cfg.selection.max_enlargement_rounds);
  }
  if (j.contains("afqmc") && !j["afqmc"].is_null()) cfg.afqmc = afqmc_from_json(j["afqmc"]);
  cfg.cholesky_threshold = j.value("cholesky_threshold", cfg.cholesky_threshold);
  cfg.output = j.value("output", std::string{});
  cfg.trace_output = j.value("trace_output", std::string{});
  return cfg;
}

std::optional<double> ResultRecord::energy(const std::string& stage) const {
  auto it = energies.find(stage);
  if (it == energies.end()) return std::nullopt;
  return it->second.value;
}

json to_json(const ResultRecord& r) {
  json energies = json::object();
  for (const auto& [stage, e] : r.energies) {
    json entry = {{"stage", stage}, {"value", e.value}, {"unit", "hartree"}};
    if (e.error) entry["error"] = *e.error;
    energies[stage] = entry;
  }
  if (!r.energies.count("fci")) energies["fci"] = nullptr;

  json trace = json::array();
  for (const auto& b : r.trace) trace.push_back({b.block, b.numerator, b.weight, b.walkers});

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  json meta = {{"version", version()},
               {"rng", kRngAlgorithm},
               {"sampler_seed", r.config.sampler.seed},
               {"afqmc_seed", r.config.afqmc ? json(r.config.afqmc->seed) : json(nullptr)},
               {"threads", threads}};

  json out = {{"schema", kResultSchema},
              {"status", r.ok ? "ok" : "failed"},
              {"failed_stage", r.ok ? json(nullptr) : json(r.failed_stage)},
              {"failure", r.ok ? json(nullptr) : json(r.failure)},
              {"energies", energies},
              {"fci_skipped", r.fci_skipped},
              {"spaces",
               {{"pool_size", r.pool_size},
                {"before_enlargement", r.space_before},
                {"after_enlargement", r.space_after},
                {"enlargement_rounds", r.enlargement_rounds},
                {"checksum", r.space.empty() ? json(nullptr) : json(r.space.checksum())},
                {"qsci_residual", r.space.empty() ? json(nullptr) : json(r.qsci_residual)}}},
              {"shots",
               {{"total", r.total_shots},
                {"discarded", r.discarded_shots}}},
              {"warnings", r.warnings},
              {"timing_seconds", r.timings},
              {"config", to_json(r.config)},
              {"metadata", meta}};
  if (!r.trace.empty()) out["afqmc_trace"] = trace;
  return out;
}

namespace {

class StageRunner {
 public:
  explicit StageRunner(ResultRecord& rec) : rec_(rec) {}

  template <class F>
  void operator()(const std::string& stage, F&& body) {
    current_ = stage;
    const auto start = std::chrono::steady_clock::now();
    body();
    rec_.timings[stage] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  const std::string& current() const noexcept { return current_; }

 private:
  ResultRecord& rec_;
  std::string current_;
};

std::vector<SpinString> spin_pool(const std::vector<PairString>& pairs) {
  std::vector<SpinString> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.bits);
  return out;
}

void write_outputs(ResultRecord& rec) {
  const auto& cfg = rec.config;
  if (!cfg.trace_output.empty() && !rec.trace.empty()) {
    std::ofstream out(cfg.trace_output);
    if (!out) {
      rec.warnings.push_back("could not write trace file " + cfg.trace_output.string());
    } else {
      afqmc::write_trace(out, rec.trace);
    }
  }
  if (!cfg.output.empty()) {
    std::ofstream out(cfg.output);
    if (!out) throw Error("could not write result file " + cfg.output.string());
    out << to_json(rec).dump(2) << '\n';
  }
}

}  // namespace

ResultRecord run_pipeline(const PipelineConfig& cfg) {
  ResultRecord rec;
  rec.config = cfg;
  StageRunner stage(rec);
  try {
    stage("config", [&] { cfg.validate_settings(); });

    IntegralSet ints(1, 0, 0);
    stage("integrals", [&] {
      if (!std::filesystem::exists(cfg.fcidump))
        throw Error("FCIDUMP not found: " + cfg.fcidump.string());
      ints = read_fcidump(cfg.fcidump);
    });

    DociSolution doci;
    stage("doci", [&] {
      doci = solve_doci(ints);
      rec.energies["doci"] = {doci.energy, std::nullopt};
    });

    std::vector<ShotRecord> shots;
    stage("sampling", [&] {
      if (cfg.sampler.source == SamplerConfig::Source::File) {
        if (!std::filesystem::exists(cfg.sampler.counts_path))
          throw Error("count file not found: " + cfg.sampler.counts_path.string());
        shots = load_counts(cfg.sampler.counts_path, ints.n_orbitals());
      } else {
        shots = surrogate_sample(doci, cfg.sampler);
      }
    });

    FilterResult filtered;
    stage("filter", [&] {
      filtered = filter_particle_number(shots, ints.n_alpha());
      rec.total_shots = filtered.kept_shots + filtered.discarded_shots;
      rec.discarded_shots = filtered.discarded_shots;
      if (filtered.records.empty())
        throw Error("no measured bitstring has the right particle number");
    });

    SelectionResult selected;
    stage("selection", [&] {
      const std::size_t r =
          cfg.selection.pool_size ? cfg.selection.pool_size : filtered.records.size();
      const auto pool = spin_pool(top_r(filtered.records, r));
      rec.pool_size = pool.size();
      const DeterminantSpace space0 = cartesian_product(pool, pool, ints.n_orbitals());
      rec.space_before = space0.size();
      SelectionConfig sel = cfg.selection;
      if (cfg.space == SpaceVariant::Fixed) {
        sel.epsilon = std::numeric_limits<double>::infinity();
        sel.max_enlargement_rounds = 0;
      }
      selected = iterate_selection(space0, ints, sel);
      rec.space_after = selected.space.size();
      rec.enlargement_rounds = selected.rounds;
      rec.space = selected.space;
      rec.qsci_residual = selected.solution.residual;
      rec.energies["qsci"] = {selected.solution.energy, std::nullopt};
    });

    stage("fci", [&] {
      if (sector_dimension(ints.n_orbitals(), ints.n_alpha(), ints.n_beta()) <= kOracleDimensionCap)
        rec.energies["fci"] = {fci_oracle(ints, kOracleDimensionCap), std::nullopt};
      else
        rec.fci_skipped = true;
    });

    if (cfg.refinement == Refinement::QsciAfqmc) {
      stage("afqmc", [&] {
        const CholeskyFactors chol = cholesky_factorize(ints, cfg.cholesky_threshold);
        const afqmc::TrialWavefunction trial(selected.solution);
        const auto result = afqmc::run_afqmc(ints, chol, trial, *cfg.afqmc);
        rec.trace = result.trace;
        rec.energies["afqmc"] = {result.mean_energy, result.error_bar};
        const double qsci = selected.solution.energy;
        if (result.mean_energy > qsci + 2.0 * result.error_bar)
          rec.warnings.push_back("AFQMC energy lies above the QSCI energy by more than 2 sigma");
      });
    }
  } catch (const afqmc::AfqmcAborted& e) {
    rec.trace = e.trace();
    rec.ok = false;
    rec.failed_stage = stage.current();
    rec.failure = e.what();
  } catch (const std::exception& e) {
    rec.ok = false;
    rec.failed_stage = stage.current();
    rec.failure = e.what();
  }
  try {
    write_outputs(rec);
  } catch (const std::exception& e) {
    if (rec.ok) {
      rec.ok = false;
      rec.failed_stage = "output";
      rec.failure = e.what();
    }
  }
  return rec;
}

std::vector<ResultRecord> run_curve(const PipelineConfig& tmpl, const std::vector<CurvePoint>& points) {
  std::vector<ResultRecord> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    PipelineConfig cfg = tmpl;
    cfg.fcidump = p.fcidump;
    cfg.output.clear();
    cfg.trace_output.clear();
    out.push_back(run_pipeline(cfg));
  }
  return out;
}

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& points,
                     const std::vector<ResultRecord>& records) {
  require(points.size() == records.size(), "one record per curve point is required");
  const std::vector<std::string> stages{"doci", "qsci", "afqmc", "fci"};
  std::map<std::string, double> minimum;
  for (const auto& r : records)
    for (const auto& s : stages)
      if (auto e = r.energy(s)) {
        auto it = minimum.find(s);
        if (it == minimum.end() || *e < it->second) minimum[s] = *e;
      }

  out << "geometry";
  for (const auto& s : stages) out << ",e_" << s;
  out << ",e_afqmc_error";
  for (const auto& s : stages) out << ",rel_" << s;
  out << ",status\n";
  out << std::setprecision(15);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& r = records[i];
    out << points[i].geometry;
    for (const auto& s : stages) {
      out << ',';
      if (auto e = r.energy(s)) out << *e;
    }
    out << ',';
    if (auto it = r.energies.find("afqmc"); it != r.energies.end() && it->second.error)
      out << *it->second.error;
    for (const auto& s : stages) {
      out << ',';
      if (auto e = r.energy(s)) out << *e - minimum.at(s);
    }
    out << ',' << (r.ok ? "ok" : "failed:" + r.failed_stage) << '\n';
  }
}

}  // namespace dqsci::pipeline
