#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "dqsci/afqmc/propagator.hpp"
#include "dqsci/afqmc/trial.hpp"
#include "dqsci/afqmc/walker.hpp"
#include "dqsci/error.hpp"
#include "dqsci/rng.hpp"

namespace dqsci::afqmc {

struct AfqmcConfig {
  double dt = 0.005;
  int steps_per_block = 50;
  int n_blocks = 3000;
  int n_walkers = 400;
  std::uint64_t seed = 0;
  int pop_control_period = 10;
  /// Unset means the first 10% of blocks (at least one).
  std::optional<int> equilibration_blocks;
  int orthogonalization_period = 5;

  int resolved_equilibration() const;
  /// Throws ContractViolation on a non-positive dt or count.
  void validate() const;
};

/// One line of the per-block trace.
struct BlockRecord {
  int block = 0;
  double numerator = 0.0;  ///< sum_w weight * Re E_L
  double weight = 0.0;     ///< sum_w weight
  int walkers = 0;         ///< walkers with nonzero weight
  double energy() const { return numerator / weight; }
  friend bool operator==(const BlockRecord&, const BlockRecord&) = default;
};

struct Ensemble {
  std::vector<Walker> walkers;
  std::vector<Rng> streams;  ///< one per walker slot
  Rng control;               ///< population control draws
  double energy_shift = 0.0;
  std::uint64_t steps = 0;
};

Ensemble initialize_ensemble(const TrialEvaluator& eval, const AfqmcConfig& cfg);

/// Phaseless weight factor for an overlap phase change dtheta.
inline double phaseless_factor(double dtheta) { return std::max(0.0, std::cos(dtheta)); }

/// Advances every walker by one step with the given auxiliary fields
/// (n_fields per walker, before force-bias shift) and applies the phaseless
/// hybrid weight update. The projected phase is that of the overlap ratio
/// under the mean-field-subtracted propagator, arg(ratio * exp(c_mf)).
void step_walker(Walker& w, const Eigen::VectorXd& noise, const Propagator& p,
                 const TrialEvaluator& eval, double energy_shift);

/// Comb resampling to the current walker count; total weight is preserved.
/// Throws SimulationError if every weight is zero.
void population_control(Ensemble& ens);

/// cfg.steps_per_block steps with comb control every pop_control_period
/// steps and QR re-orthonormalization every orthogonalization_period steps.
void propagate_block(Ensemble& ens, const Propagator& p, const TrialEvaluator& eval,
                     const AfqmcConfig& cfg);

/// Weighted mixed-estimator energy of the current ensemble.
BlockRecord measure(const Ensemble& ens, const TrialEvaluator& eval, int block);

struct AfqmcResult {
  double mean_energy = 0.0;
  double error_bar = 0.0;
  int equilibration_blocks = 0;
  std::vector<BlockRecord> trace;
};

/// Raised when a run stops early; carries the trace produced so far.
class AfqmcAborted : public SimulationError {
 public:
  AfqmcAborted(const std::string& what, std::vector<BlockRecord> trace)
      : SimulationError(what), trace_(std::move(trace)) {}
  const std::vector<BlockRecord>& trace() const noexcept { return trace_; }

 private:
  std::vector<BlockRecord> trace_;
};

/// Mean over post-equilibration blocks with a reblocked error bar (plain
/// standard error below 8 blocks). Throws SimulationError("insufficient
/// statistics") when no block survives equilibration, AfqmcAborted on
/// collapse or a non-finite energy.
AfqmcResult run_afqmc(const IntegralSet& ints, const CholeskyFactors& chol,
                      const TrialWavefunction& trial, const AfqmcConfig& cfg);

/// Block statistics of a finished trace.
AfqmcResult summarize_trace(std::vector<BlockRecord> trace, int equilibration_blocks);

void write_trace(std::ostream& out, const std::vector<BlockRecord>& trace);
std::vector<BlockRecord> read_trace(std::istream& in);

}  // namespace dqsci::afqmc
