// Command-line front end: stage subcommands plus the full workflow and
// dissociation-curve scans.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "config_document.hpp"
#include "dqsci/doci.hpp"
#include "dqsci/error.hpp"
#include "dqsci/fci.hpp"
#include "dqsci/integrals.hpp"
#include "dqsci/pipeline.hpp"
#include "dqsci/sampler.hpp"

namespace {

using nlohmann::json;
using namespace dqsci;
namespace fs = std::filesystem;

constexpr int kExitUsage = 1;
constexpr int kExitStageFailure = 2;

struct ConfigOptions {
  fs::path config;
  fs::path replay;
  std::map<std::string, std::string> values;
  std::map<std::string, std::vector<CLI::Option*>> flags;  ///< one per subcommand
};

void add_config_options(CLI::App* app, ConfigOptions& o) {
  auto* config = app->add_option("-c,--config", o.config, "TOML run configuration")
                     ->check(CLI::ExistingFile);
  app->add_option("--replay", o.replay, "re-run the configuration echoed in a result record")
      ->check(CLI::ExistingFile)
      ->excludes(config);
  for (const auto& key : cli::config_keys()) {
    std::string names = "--" + key;
    if (key == "fcidump") names = "-f," + names;
    if (key == "output") names = "-o," + names;
    o.flags[key].push_back(app->add_option(names, o.values[key], "overrides " + key)->group("Configuration keys"));
  }
}

pipeline::PipelineConfig resolve_config(const ConfigOptions& o) {
  json doc = json::object();
  if (!o.config.empty()) {
    doc = cli::load_config_document(o.config);
  } else if (!o.replay.empty()) {
    std::ifstream in(o.replay);
    const json record = json::parse(in);
    require(record.contains("config") && record["config"].is_object(),
            o.replay.string() + " has no config echo");
    doc = record["config"];
    doc["output"] = "";
    doc["trace_output"] = "";
  }
  for (const auto& [key, flags] : o.flags)
    if (std::any_of(flags.begin(), flags.end(), [](const CLI::Option* f) { return f->count() > 0; }))
      cli::apply_override(doc, key, o.values.at(key));
  return cli::config_from_document(doc);
}

IntegralSet load_integrals(const pipeline::PipelineConfig& cfg) {
  require(!cfg.fcidump.empty(), "an FCIDUMP is required (--fcidump or fcidump = ...)");
  return read_fcidump(cfg.fcidump);
}

int report(const pipeline::ResultRecord& rec) {
  if (rec.config.output.empty()) std::cout << pipeline::to_json(rec).dump(2) << '\n';
  for (const auto& w : rec.warnings) std::cerr << "warning: " << w << '\n';
  if (!rec.ok) {
    std::cerr << "dqsci: stage '" << rec.failed_stage << "' failed: " << rec.failure << '\n';
    return kExitStageFailure;
  }
  return 0;
}

int run_sample(const ConfigOptions& o, const fs::path& out_path, bool filtered_only) {
  const auto cfg = resolve_config(o);
  const auto ints = load_integrals(cfg);
  std::vector<ShotRecord> shots;
  if (cfg.sampler.source == SamplerConfig::Source::File) {
    shots = load_counts(cfg.sampler.counts_path, ints.n_orbitals());
  } else {
    require(cfg.sampler.shots >= 1, "sampler.shots must be >= 1");
    shots = surrogate_sample(solve_doci(ints), cfg.sampler);
  }
  const auto filtered = filter_particle_number(shots, ints.n_alpha());
  const auto& records = filtered_only ? filtered.records : shots;

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw Error("cannot write " + out_path.string());
  }
  std::ostream& out = out_path.empty() ? std::cout : file;
  out << "# seed " << cfg.sampler.seed << "\n";
  write_counts(out, records, ints.n_orbitals());
  std::cerr << "shots " << filtered.kept_shots + filtered.discarded_shots << ", kept "
            << filtered.kept_shots << ", discarded " << filtered.discarded_shots << " ("
            << std::setprecision(4) << 100.0 * filtered.discard_fraction() << "%), distinct kept "
            << filtered.records.size() << '\n';
  return 0;
}

int run_doci(const ConfigOptions& o, std::size_t top) {
  const auto cfg = resolve_config(o);
  const auto ints = load_integrals(cfg);
  const auto sol = solve_doci(ints);
  std::vector<std::size_t> order(sol.basis.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(sol.amplitudes[a]) > std::abs(sol.amplitudes[b]);
  });
  std::cout << std::setprecision(12) << "E_DOCI " << sol.energy << " hartree\n"
            << "dimension " << sol.basis.size() << '\n';
  for (std::size_t k = 0; k < std::min(top, order.size()); ++k) {
    const auto i = order[k];
    std::cout << sol.basis[i].bits.to_string(ints.n_orbitals()) << ' ' << std::setw(16)
              << sol.amplitudes[i] << '\n';
  }
  return 0;
}

int run_fci(const ConfigOptions& o, std::size_t cap) {
  const auto cfg = resolve_config(o);
  const auto ints = load_integrals(cfg);
  const auto sol = fci_solution(ints, cap);
  const json out = {{"stage", "fci"},
                    {"energy", sol.energy},
                    {"unit", "hartree"},
                    {"dimension", sol.space.size()},
                    {"residual", sol.residual}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_stage(const ConfigOptions& o, std::optional<pipeline::Refinement> forced,
              const fs::path& space_out) {
  auto cfg = resolve_config(o);
  if (forced) cfg.refinement = *forced;
  if (cfg.refinement == pipeline::Refinement::QsciAfqmc && !cfg.afqmc) cfg.afqmc = afqmc::AfqmcConfig{};
  const auto rec = pipeline::run_pipeline(cfg);
  if (!space_out.empty() && !rec.space.empty()) {
    std::ofstream out(space_out);
    if (!out) throw Error("cannot write " + space_out.string());
    write_space(out, rec.space);
  }
  return report(rec);
}

std::vector<pipeline::CurvePoint> collect_points(const std::vector<std::string>& specs,
                                                 const fs::path& points_file) {
  std::vector<pipeline::CurvePoint> points;
  auto add = [&](const std::string& value, const std::string& path, const std::string& where) {
    std::size_t used = 0;
    double g = 0.0;
    try {
      g = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used == value.size() && !value.empty(), "bad geometry value '" + value + "' in " + where);
    require(!path.empty(), "missing FCIDUMP path in " + where);
    points.push_back({g, path});
  };
  for (const auto& s : specs) {
    const auto colon = s.find(':');
    require(colon != std::string::npos, "--point expects VALUE:PATH, got '" + s + "'");
    add(s.substr(0, colon), s.substr(colon + 1), "--point " + s);
  }
  if (!points_file.empty()) {
    std::ifstream in(points_file);
    if (!in) throw Error("cannot open " + points_file.string());
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream fields(line);
      std::string value, path;
      if (!(fields >> value)) continue;
      fields >> path;
      add(value, path, points_file.string() + " line " + std::to_string(n));
    }
  }
  require(!points.empty(), "a curve needs at least one point (--point or --points)");
  std::stable_sort(points.begin(), points.end(),
                   [](const auto& a, const auto& b) { return a.geometry < b.geometry; });
  return points;
}

int run_curve_command(const ConfigOptions& o, const std::vector<std::string>& specs,
                      const fs::path& points_file, const fs::path& csv_path, const fs::path& records_path) {
  auto tmpl = resolve_config(o);
  const auto points = collect_points(specs, points_file);
  tmpl.fcidump = points.front().fcidump;
  if (tmpl.refinement == pipeline::Refinement::QsciAfqmc && !tmpl.afqmc) tmpl.afqmc = afqmc::AfqmcConfig{};
  const auto records = pipeline::run_curve(tmpl, points);

  std::ofstream file;
  if (!csv_path.empty()) {
    file.open(csv_path);
    if (!file) throw Error("cannot write " + csv_path.string());
  }
  pipeline::write_curve_csv(csv_path.empty() ? std::cout : file, points, records);

  if (!records_path.empty()) {
    json all = json::array();
    for (const auto& r : records) all.push_back(pipeline::to_json(r));
    std::ofstream out(records_path);
    if (!out) throw Error("cannot write " + records_path.string());
    out << all.dump(2) << '\n';
  }
  int failed = 0;
  for (std::size_t i = 0; i < records.size(); ++i)
    if (!records[i].ok) {
      ++failed;
      std::cerr << "point " << points[i].geometry << ": stage '" << records[i].failed_stage
                << "' failed: " << records[i].failure << '\n';
    }
  return failed ? kExitStageFailure : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DOCI-seeded quantum-selected CI with phaseless AFQMC refinement"};
  app.set_version_flag("--version", pipeline::version());
  app.require_subcommand(1);
  app.footer("Thread count follows OMP_NUM_THREADS. Every configuration key can be set in the "
             "--config file or with a flag of the same dotted name.");

  ConfigOptions opts;

  auto* sample = app.add_subcommand("sample", "draw or ingest shots and write a count file");
  add_config_options(sample, opts);
  fs::path counts_out;
  bool filtered_only = false;
  sample->add_option("--counts-out", counts_out, "count file to write (default stdout)");
  sample->add_flag("--filtered", filtered_only, "write only particle-number-conserving strings");

  auto* doci = app.add_subcommand("doci", "solve the seniority-zero problem");
  add_config_options(doci, opts);
  std::size_t top = 10;
  doci->add_option("--top", top, "number of leading amplitudes to print")->capture_default_str();

  auto* qsci = app.add_subcommand("qsci", "sample, select and diagonalize; prints a result record");
  add_config_options(qsci, opts);
  fs::path space_out;
  qsci->add_option("--space-out", space_out, "write the final determinant space");

  auto* afqmc = app.add_subcommand("afqmc", "QSCI followed by phaseless AFQMC with the QSCI trial");
  add_config_options(afqmc, opts);
  afqmc->add_option("--space-out", space_out, "write the trial determinant space");

  auto* run = app.add_subcommand("pipeline", "run the configured workflow variant");
  add_config_options(run, opts);

  auto* curve = app.add_subcommand("curve", "run the workflow at several geometries and write a CSV");
  add_config_options(curve, opts);
  std::vector<std::string> point_specs;
  fs::path points_file, csv_path, records_path;
  curve->add_option("--point", point_specs, "geometry point as VALUE:FCIDUMP (repeatable)");
  curve->add_option("--points", points_file, "file of 'VALUE FCIDUMP' lines")->check(CLI::ExistingFile);
  curve->add_option("--csv", csv_path, "CSV output (default stdout)");
  curve->add_option("--records", records_path, "JSON array of per-point result records");

  auto* fci = app.add_subcommand("fci", "exact diagonalization in the full sector");
  add_config_options(fci, opts);
  std::size_t cap = kFciDimensionCap;
  fci->add_option("--cap", cap, "largest sector dimension to attempt")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample) return run_sample(opts, counts_out, filtered_only);
    if (*doci) return run_doci(opts, top);
    if (*qsci) return run_stage(opts, pipeline::Refinement::QsciOnly, space_out);
    if (*afqmc) return run_stage(opts, pipeline::Refinement::QsciAfqmc, space_out);
    if (*run) return run_stage(opts, std::nullopt, {});
    if (*curve) return run_curve_command(opts, point_specs, points_file, csv_path, records_path);
    if (*fci) return run_fci(opts, cap);
  } catch (const std::exception& e) {
    std::cerr << "dqsci: error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
