#include "dqsci/afqmc/afqmc.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "dqsci/afqmc/reblock.hpp"

namespace dqsci::afqmc {

int AfqmcConfig::resolved_equilibration() const {
  return equilibration_blocks ? *equilibration_blocks : std::max(1, n_blocks / 10);
}

void AfqmcConfig::validate() const {
  require(dt > 0.0 && std::isfinite(dt), "afqmc.dt must be positive");
  require(steps_per_block >= 1, "afqmc.steps_per_block must be >= 1");
  require(n_blocks >= 1, "afqmc.n_blocks must be >= 1");
  require(n_walkers >= 1, "afqmc.n_walkers must be >= 1");
  require(pop_control_period >= 1, "afqmc.pop_control_period must be >= 1");
  require(orthogonalization_period >= 1, "afqmc.orthogonalization_period must be >= 1");
  require(resolved_equilibration() >= 1, "afqmc.equilibration_blocks must be >= 1");
}

Ensemble initialize_ensemble(const TrialEvaluator& eval, const AfqmcConfig& cfg) {
  const auto& trial = eval.trial();
  Walker seed_walker = walker_from_determinant(trial.dominant(), trial.n_orbitals(),
                                               trial.n_alpha(), trial.n_beta());
  eval.refresh(seed_walker);
  Ensemble ens{std::vector<Walker>(static_cast<std::size_t>(cfg.n_walkers), seed_walker),
               {},
               Rng::stream(cfg.seed, static_cast<std::uint64_t>(cfg.n_walkers)),
               trial.energy(),
               0};
  ens.streams.reserve(ens.walkers.size());
  for (std::size_t i = 0; i < ens.walkers.size(); ++i) ens.streams.push_back(Rng::stream(cfg.seed, i));
  return ens;
}

void step_walker(Walker& w, const Eigen::VectorXd& noise, const Propagator& p,
                 const TrialEvaluator& eval, double energy_shift) {
  if (w.weight <= 0.0) return;
  const double sqrt_dt = std::sqrt(p.dt);
  const auto n_fields = static_cast<Eigen::Index>(p.n_fields());
  Eigen::VectorXcd bias(n_fields);
  for (Eigen::Index g = 0; g < n_fields; ++g) {
    Complex x = Complex{0.0, -sqrt_dt} * (w.mixed_fields(g) - p.mean_field(g));
    if (std::abs(x) > 1.0) x /= std::abs(x);
    bias(g) = x;
  }
  const Eigen::VectorXcd shifted = noise.cast<Complex>() - bias;

  apply_propagator(p, w.alpha, shifted);
  apply_propagator(p, w.beta, shifted);
  const Complex old_overlap = w.overlap;
  eval.refresh(w);
  if (w.overlap == Complex{0.0} || old_overlap == Complex{0.0}) {
    w.weight = 0.0;
    return;
  }

  const Complex ratio = w.overlap / old_overlap;
  Complex cfb = 0.0;
  Complex cmf = 0.0;
  for (Eigen::Index g = 0; g < n_fields; ++g) {
    cfb += noise(g) * bias(g) - 0.5 * bias(g) * bias(g);
    cmf += Complex{0.0, -sqrt_dt} * shifted(g) * p.mean_field(g);
  }
  const double bound = std::sqrt(2.0 / p.dt);
  double hybrid = p.constant - (std::log(ratio) + cfb + cmf).real() / p.dt;
  hybrid = std::clamp(hybrid, energy_shift - bound, energy_shift + bound);
  const double dtheta = (std::log(ratio) + cmf).imag();
  w.weight *= std::exp(-p.dt * (hybrid - energy_shift)) * phaseless_factor(dtheta);
  if (!std::isfinite(w.weight)) w.weight = 0.0;
}

void population_control(Ensemble& ens) {
  double total = 0.0;
  for (const auto& w : ens.walkers) total += w.weight;
  if (!(total > 0.0)) throw SimulationError("population collapse: every walker weight is zero");
  const std::size_t n = ens.walkers.size();
  const double spacing = total / static_cast<double>(n);
  const double offset = ens.control.uniform() * spacing;

  std::vector<Walker> next;
  next.reserve(n);
  double cumulative = 0.0;
  std::size_t tooth = 0;
  for (const auto& w : ens.walkers) {
    cumulative += w.weight;
    while (tooth < n && offset + static_cast<double>(tooth) * spacing < cumulative) {
      next.push_back(w);
      next.back().weight = spacing;
      ++tooth;
    }
  }
  while (next.size() < n) {
    next.push_back(next.back());
  }
  ens.walkers = std::move(next);
}

namespace {

void orthonormalize(Eigen::MatrixXcd& psi) {
  if (psi.cols() == 0) return;
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(psi);
  psi = qr.householderQ() * Eigen::MatrixXcd::Identity(psi.rows(), psi.cols());
}

}  // namespace

void propagate_block(Ensemble& ens, const Propagator& p, const TrialEvaluator& eval,
                     const AfqmcConfig& cfg) {
  const auto n_fields = static_cast<Eigen::Index>(p.n_fields());
  const auto n = static_cast<std::ptrdiff_t>(ens.walkers.size());
  for (int s = 0; s < cfg.steps_per_block; ++s) {
    ++ens.steps;
    const bool ortho = ens.steps % static_cast<std::uint64_t>(cfg.orthogonalization_period) == 0;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      auto& w = ens.walkers[static_cast<std::size_t>(i)];
      auto& rng = ens.streams[static_cast<std::size_t>(i)];
      Eigen::VectorXd noise(n_fields);
      for (Eigen::Index g = 0; g < n_fields; ++g) noise(g) = rng.normal();
      step_walker(w, noise, p, eval, ens.energy_shift);
      if (ortho && w.weight > 0.0) {
        orthonormalize(w.alpha);
        orthonormalize(w.beta);
        eval.refresh(w);
      }
    }
    if (ens.steps % static_cast<std::uint64_t>(cfg.pop_control_period) == 0) population_control(ens);
  }
  bool alive = false;
  for (const auto& w : ens.walkers) alive = alive || w.weight > 0.0;
  if (!alive) throw SimulationError("population collapse: every walker weight is zero");
}

BlockRecord measure(const Ensemble& ens, const TrialEvaluator& eval, int block) {
  const auto n = static_cast<std::ptrdiff_t>(ens.walkers.size());
  std::vector<double> energy(ens.walkers.size(), 0.0);
  std::vector<char> degenerate(ens.walkers.size(), 0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& w = ens.walkers[static_cast<std::size_t>(i)];
    if (w.weight <= 0.0) continue;
    const auto r = eval.evaluate(w.alpha, w.beta, true);
    if (std::abs(r.overlap) < 1e-12) degenerate[static_cast<std::size_t>(i)] = 1;
    else energy[static_cast<std::size_t>(i)] = r.energy.real();
  }
  BlockRecord rec;
  rec.block = block;
  for (std::size_t i = 0; i < ens.walkers.size(); ++i) {
    const double wt = ens.walkers[i].weight;
    if (wt <= 0.0) continue;
    if (degenerate[i]) throw SimulationError("degenerate walker: overlap with the trial below 1e-12");
    rec.numerator += wt * energy[i];
    rec.weight += wt;
    ++rec.walkers;
  }
  return rec;
}

AfqmcResult summarize_trace(std::vector<BlockRecord> trace, int equilibration_blocks) {
  require(equilibration_blocks >= 0, "equilibration block count must be non-negative");
  if (static_cast<std::size_t>(equilibration_blocks) >= trace.size())
    throw SimulationError("insufficient statistics: no blocks left after equilibration");
  std::vector<double> series;
  for (std::size_t b = static_cast<std::size_t>(equilibration_blocks); b < trace.size(); ++b)
    series.push_back(trace[b].energy());
  const ReblockResult r =
      series.size() >= kMinReblockSamples ? reblock(series) : naive_error(series);
  return {r.mean, r.error, equilibration_blocks, std::move(trace)};
}

AfqmcResult run_afqmc(const IntegralSet& ints, const CholeskyFactors& chol,
                      const TrialWavefunction& trial, const AfqmcConfig& cfg) {
  cfg.validate();
  const TrialEvaluator eval(trial, ints, chol);
  const Propagator prop = build_propagator(ints, chol, trial, cfg.dt);
  Ensemble ens = initialize_ensemble(eval, cfg);
  std::vector<BlockRecord> trace;
  trace.reserve(static_cast<std::size_t>(cfg.n_blocks));
  try {
    for (int b = 0; b < cfg.n_blocks; ++b) {
      propagate_block(ens, prop, eval, cfg);
      const BlockRecord rec = measure(ens, eval, b);
      if (!std::isfinite(rec.energy()))
        throw SimulationError("non-finite block energy at block " + std::to_string(b));
      trace.push_back(rec);
      ens.energy_shift = rec.energy();
    }
  } catch (const SimulationError& e) {
    throw AfqmcAborted(e.what(), std::move(trace));
  }
  return summarize_trace(std::move(trace), cfg.resolved_equilibration());
}

void write_trace(std::ostream& out, const std::vector<BlockRecord>& trace) {
  out << "# block numerator weight walkers\n";
  out << std::setprecision(17);
  for (const auto& r : trace)
    out << r.block << ' ' << r.numerator << ' ' << r.weight << ' ' << r.walkers << '\n';
}

std::vector<BlockRecord> read_trace(std::istream& in) {
  std::vector<BlockRecord> trace;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    BlockRecord r;
    std::string extra;
    if (!(fields >> r.block >> r.numerator >> r.weight >> r.walkers) || (fields >> extra))
      throw ParseError("expected 'block numerator weight walkers'", lineno);
    trace.push_back(r);
  }
  return trace;
}

}  // namespace dqsci::afqmc
