#include "dqsci/afqmc/walker.hpp"

#include <cmath>

#include "dqsci/error.hpp"

namespace dqsci::afqmc {

namespace {

Eigen::MatrixXcd unit_columns(const SpinString& s, int n) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, s.popcount());
  int col = 0;
  s.for_each_set([&](int k) { m(k, col++) = 1.0; });
  return m;
}

Eigen::MatrixXcd gather_rows(const Eigen::MatrixXcd& psi, const std::vector<int>& occ) {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(occ.size()), psi.cols());
  for (std::size_t i = 0; i < occ.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = psi.row(occ[i]);
  return m;
}

Complex minor_determinant(const Eigen::MatrixXcd& psi, const std::vector<int>& occ) {
  if (occ.empty()) return 1.0;
  return gather_rows(psi, occ).partialPivLu().determinant();
}

void check_shape(const TrialWavefunction& t, const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  require(a.rows() == t.n_orbitals() && b.rows() == t.n_orbitals() && a.cols() == t.n_alpha() &&
              b.cols() == t.n_beta(),
          "walker shape does not match the trial sector");
}

}  // namespace

Walker walker_from_determinant(const Determinant& d, int n_orbitals, int n_alpha, int n_beta) {
  require(d.alpha.popcount() == n_alpha && d.beta.popcount() == n_beta &&
              d.alpha.fits(n_orbitals) && d.beta.fits(n_orbitals),
          "determinant does not belong to the requested sector");
  Walker w;
  w.alpha = unit_columns(d.alpha, n_orbitals);
  w.beta = unit_columns(d.beta, n_orbitals);
  return w;
}

Complex overlap_ratio(const TrialWavefunction& trial, const Walker& w) {
  check_shape(trial, w.alpha, w.beta);
  std::vector<Complex> da(trial.alpha_strings().size());
  std::vector<Complex> db(trial.beta_strings().size());
  for (std::size_t u = 0; u < da.size(); ++u) da[u] = minor_determinant(w.alpha, trial.alpha_occupations()[u]);
  for (std::size_t u = 0; u < db.size(); ++u) db[u] = minor_determinant(w.beta, trial.beta_occupations()[u]);
  Complex sum = 0.0;
  for (const auto& t : trial.terms()) sum += t.coeff * da[t.alpha] * db[t.beta];
  return sum;
}

TrialEvaluator::TrialEvaluator(const TrialWavefunction& trial, const IntegralSet& ints,
                               const CholeskyFactors& chol)
    : trial_(&trial),
      n_(ints.n_orbitals()),
      core_(ints.core_energy()),
      h1_(ints.h1_matrix()),
      chol_(chol.vectors) {
  require(trial.n_orbitals() == n_ && trial.n_alpha() == ints.n_alpha() &&
              trial.n_beta() == ints.n_beta(),
          "trial and integrals describe different sectors");
  require(chol.n_orbitals == n_, "Cholesky factors do not match the integrals");
  lmat_.resize(static_cast<Eigen::Index>(chol_.size()), n_ * n_);
  for (std::size_t g = 0; g < chol_.size(); ++g)
    for (int p = 0; p < n_; ++p)
      for (int q = 0; q < n_; ++q) lmat_(static_cast<Eigen::Index>(g), p * n_ + q) = chol_[g](p, q);
}

TrialEvaluator::SpinData TrialEvaluator::evaluate_spin(const Eigen::MatrixXcd& psi,
                                                       const std::vector<std::vector<int>>& occ,
                                                       bool with_energy) const {
  const auto n_strings = static_cast<Eigen::Index>(occ.size());
  SpinData out;
  out.det = Eigen::VectorXcd::Zero(n_strings);
  if (with_energy) out.energy = Eigen::VectorXcd::Zero(n_strings);
  Eigen::MatrixXcd green = Eigen::MatrixXcd::Zero(n_ * n_, n_strings);
  for (Eigen::Index u = 0; u < n_strings; ++u) {
    const auto& o = occ[static_cast<std::size_t>(u)];
    if (o.empty()) {
      out.det(u) = 1.0;
      continue;
    }
    const auto lu = gather_rows(psi, o).partialPivLu();
    const Complex d = lu.determinant();
    if (d == Complex{0.0} || !std::isfinite(std::abs(d))) continue;
    out.det(u) = d;
    const Eigen::MatrixXcd theta = psi * lu.inverse();
    for (std::size_t i = 0; i < o.size(); ++i)
      for (int q = 0; q < n_; ++q) green(o[i] * n_ + q, u) = theta(q, static_cast<Eigen::Index>(i));
    if (!with_energy) continue;
    Complex e = 0.0;
    for (std::size_t i = 0; i < o.size(); ++i)
      for (int q = 0; q < n_; ++q) e += h1_(o[i], q) * theta(q, static_cast<Eigen::Index>(i));
    Complex exchange = 0.0;
    for (const auto& l : chol_) {
      Eigen::MatrixXd rows(static_cast<Eigen::Index>(o.size()), n_);
      for (std::size_t i = 0; i < o.size(); ++i) rows.row(static_cast<Eigen::Index>(i)) = l.row(o[i]);
      const Eigen::MatrixXcd a = rows.cast<Complex>() * theta;
      exchange += a.cwiseProduct(a.transpose()).sum();
    }
    out.energy(u) = e - 0.5 * exchange;
  }
  out.fields = lmat_ * green;
  if (with_energy) {
    for (Eigen::Index u = 0; u < n_strings; ++u)
      if (out.det(u) != Complex{0.0})
        out.energy(u) += 0.5 * out.fields.col(u).cwiseProduct(out.fields.col(u)).sum();
  }
  return out;
}

TrialEvaluator::Result TrialEvaluator::evaluate(const Eigen::MatrixXcd& alpha,
                                                const Eigen::MatrixXcd& beta,
                                                bool with_energy) const {
  const auto& t = *trial_;
  check_shape(t, alpha, beta);
  const SpinData a = evaluate_spin(alpha, t.alpha_occupations(), with_energy);
  const SpinData b = evaluate_spin(beta, t.beta_occupations(), with_energy);

  Result r;
  r.overlap = 0.0;
  Eigen::VectorXcd wa = Eigen::VectorXcd::Zero(a.det.size());
  Eigen::VectorXcd wb = Eigen::VectorXcd::Zero(b.det.size());
  Complex numerator = 0.0;
  Eigen::MatrixXcd cross;
  if (with_energy) cross = a.fields.transpose() * b.fields;
  for (const auto& term : t.terms()) {
    const Complex o = term.coeff * a.det(term.alpha) * b.det(term.beta);
    if (o == Complex{0.0}) continue;
    r.overlap += o;
    wa(term.alpha) += o;
    wb(term.beta) += o;
    if (with_energy)
      numerator += o * (core_ + a.energy(term.alpha) + b.energy(term.beta) + cross(term.alpha, term.beta));
  }
  if (r.overlap == Complex{0.0}) {
    r.mixed_fields = Eigen::VectorXcd::Zero(lmat_.rows());
    r.energy = 0.0;
    return r;
  }
  r.mixed_fields = (a.fields * wa + b.fields * wb) / r.overlap;
  r.energy = with_energy ? numerator / r.overlap : Complex{0.0};
  return r;
}

void TrialEvaluator::refresh(Walker& w) const {
  Result r = evaluate(w.alpha, w.beta, false);
  w.overlap = r.overlap;
  w.mixed_fields = std::move(r.mixed_fields);
}

Complex TrialEvaluator::local_energy(const Walker& w) const {
  const Result r = evaluate(w.alpha, w.beta, true);
  if (std::abs(r.overlap) < 1e-12)
    throw SimulationError("degenerate walker: overlap with the trial below 1e-12");
  return r.energy;
}

Complex local_energy(const TrialWavefunction& trial, const Walker& w, const IntegralSet& ints,
                     const CholeskyFactors& chol) {
  return TrialEvaluator(trial, ints, chol).local_energy(w);
}

}  // namespace dqsci::afqmc
