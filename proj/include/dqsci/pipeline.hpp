#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dqsci/afqmc/afqmc.hpp"
#include "dqsci/cholesky.hpp"
#include "dqsci/determinant_space.hpp"
#include "dqsci/sampler.hpp"
#include "dqsci/selection.hpp"

namespace dqsci::pipeline {

inline constexpr int kResultSchema = 1;
/// Sectors up to this size get an automatic FCI reference energy.
inline constexpr std::size_t kOracleDimensionCap = 100000;

enum class SpaceVariant { Fixed, Enlarged };
enum class Refinement { QsciOnly, QsciAfqmc };

struct PipelineConfig {
  std::filesystem::path fcidump;
  SamplerConfig sampler;
  SelectionConfig selection;
  std::optional<afqmc::AfqmcConfig> afqmc;
  SpaceVariant space = SpaceVariant::Fixed;
  Refinement refinement = Refinement::QsciOnly;
  double cholesky_threshold = kDefaultCholeskyThreshold;
  /// Written when non-empty.
  std::filesystem::path output;
  std::filesystem::path trace_output;

  /// Throws ContractViolation when the variant flags disagree with the
  /// sections present or a setting is out of range.
  void validate_settings() const;
  /// validate_settings() plus existence of every referenced input file.
  void validate() const;
};

nlohmann::json to_json(const PipelineConfig& cfg);
/// Inverse of to_json; missing keys keep their defaults.
PipelineConfig config_from_json(const nlohmann::json& j);

std::string to_string(SpaceVariant v);
std::string to_string(Refinement r);
SpaceVariant parse_space_variant(const std::string& s);
Refinement parse_refinement(const std::string& s);

struct StageEnergy {
  double value = 0.0;
  std::optional<double> error;  ///< statistical error, AFQMC only
};

struct ResultRecord {
  bool ok = true;
  std::string failed_stage;   ///< empty when ok
  std::string failure;        ///< diagnostic message
  std::map<std::string, StageEnergy> energies;  ///< keyed by stage: doci, qsci, afqmc, fci
  bool fci_skipped = false;   ///< sector above kOracleDimensionCap
  std::size_t pool_size = 0;  ///< R
  std::size_t space_before = 0;
  std::size_t space_after = 0;
  int enlargement_rounds = 0;
  DeterminantSpace space;       ///< final QSCI space
  double qsci_residual = 0.0;
  std::uint64_t total_shots = 0;
  std::uint64_t discarded_shots = 0;
  std::vector<std::string> warnings;
  std::map<std::string, double> timings;  ///< seconds per stage
  std::vector<afqmc::BlockRecord> trace;
  PipelineConfig config;

  std::optional<double> energy(const std::string& stage) const;
};

nlohmann::json to_json(const ResultRecord& r);

/// Runs sample/ingest, filter, top_r, Cartesian product, optional
/// enlargement, diagonalization and optional AFQMC. Stage failures are
/// recorded in the result, never thrown. Writes cfg.output and
/// cfg.trace_output when set.
ResultRecord run_pipeline(const PipelineConfig& cfg);

struct CurvePoint {
  double geometry = 0.0;
  std::filesystem::path fcidump;
};

/// One pipeline run per point with the template's settings; failures are
/// recorded per point. Template output paths are ignored.
std::vector<ResultRecord> run_curve(const PipelineConfig& tmpl, const std::vector<CurvePoint>& points);

/// Columns: geometry, per-stage energies, AFQMC error, then energies relative
/// to each stage's minimum over the curve, and a status column.
void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& points,
                     const std::vector<ResultRecord>& records);

std::string version();

}  // namespace dqsci::pipeline
