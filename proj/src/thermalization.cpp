#include "tbri/thermalization.hpp"

#include <algorithm>
#include <cmath>

#include "tbri/errors.hpp"
#include "tbri/numerics.hpp"

namespace tbri {

OccupationDistribution occupation_numbers(const SpectralDecomposition& spec,
                                          const FockBasis& basis,
                                          std::span<const double> h0_diagonal,
                                          std::size_t alpha) {
  const std::size_t dim = spec.eigenvalues.size();
  if (alpha >= dim) throw ValidationError("occupation_numbers: alpha out of range");
  if (basis.size() != dim || h0_diagonal.size() != dim) {
    throw ValidationError("occupation_numbers: basis/decomposition size mismatch");
  }
  const int m = basis.levels();
  OccupationDistribution dist;
  dist.alpha = alpha;
  dist.energy = spec.eigenvalues[alpha];
  dist.values.assign(m, 0.0);
  double dressed = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const double c = spec.coefficients(k, alpha);
    const double w = c * c;
    dressed += w * h0_diagonal[k];
    const auto occ = basis.state(k);
    for (int s = 0; s < m; ++s) dist.values[s] += w * occ[s];
  }
  dist.dressed_energy = dressed;
  dist.shift = dressed - dist.energy;
  return dist;
}

double BedSolution::mu() const {
  if (beta == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return std::log(z) / beta;
}

namespace {

struct BedEval {
  double count = 0.0;
  double energy = 0.0;
  double t = 0.0;  // z / z_max(beta)
  std::vector<double> occupations;
};

/// Occupations at (beta, t), t in (0,1) with z = t * exp(beta * eps_ref) and
/// eps_ref the level where z e^{-beta eps} is largest, so every x_s < 1.
BedEval evaluate_at(std::span<const double> eps, double beta, double t) {
  const double e_min = *std::min_element(eps.begin(), eps.end());
  const double e_max = *std::max_element(eps.begin(), eps.end());
  const double ref = beta >= 0.0 ? e_min : e_max;
  BedEval ev;
  ev.t = t;
  ev.occupations.resize(eps.size());
  for (std::size_t s = 0; s < eps.size(); ++s) {
    const double x = t * std::exp(-beta * (eps[s] - ref));
    const double n = x / (1.0 - x);
    ev.occupations[s] = n;
    ev.count += n;
    ev.energy += eps[s] * n;
  }
  return ev;
}

/// Inner solve: t such that the particle count equals N (monotone in t).
BedEval solve_particles(std::span<const double> eps, double beta, int n_particles,
                        const BedOptions& opt) {
  const double target = n_particles;
  double lo = 0.0, hi = 1.0 - 1e-16;
  BedEval ev;
  for (int it = 0; it < opt.max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    ev = evaluate_at(eps, beta, mid);
    if (std::abs(ev.count - target) <= opt.tolerance * std::max(1.0, target)) {
      return ev;
    }
    (ev.count < target ? lo : hi) = mid;
  }
  return evaluate_at(eps, beta, 0.5 * (lo + hi));
}

}  // namespace

BedSolution solve_bed(std::span<const double> sp_energies, int n_particles,
                      double e_target, const BedOptions& options) {
  if (n_particles < 1) throw ValidationError("solve_bed: n_particles >= 1");
  if (sp_energies.size() < 2) throw ValidationError("solve_bed: need >= 2 levels");
  const double e_min = *std::min_element(sp_energies.begin(), sp_energies.end());
  const double e_max = *std::max_element(sp_energies.begin(), sp_energies.end());
  if (!(e_target > n_particles * e_min && e_target < n_particles * e_max)) {
    throw ValidationError(
        "solve_bed: E_target " + std::to_string(e_target) +
        " outside the attainable range (" + std::to_string(n_particles * e_min) +
        ", " + std::to_string(n_particles * e_max) + ")");
  }

  auto energy_at = [&](double beta) {
    return solve_particles(sp_energies, beta, n_particles, options);
  };

  const BedEval at_min = energy_at(options.beta_min);
  const BedEval at_max = energy_at(options.beta_max);
  // E(beta) is strictly decreasing; the bracket must straddle the target.
  if (!(at_min.energy > at_max.energy)) {
    throw ComputationError("solve_bed: energy not decreasing across the beta bracket");
  }
  const double edge_tol = 1e-9 * std::max(1.0, std::abs(e_target));
  if (e_target > at_min.energy + edge_tol || e_target < at_max.energy - edge_tol) {
    throw ComputationError(
        "solve_bed: E_target " + std::to_string(e_target) +
        " outside the bracket-attainable range [" + std::to_string(at_max.energy) +
        ", " + std::to_string(at_min.energy) + "] for beta in [" +
        std::to_string(options.beta_min) + ", " + std::to_string(options.beta_max) +
        "]; widen BedOptions::beta_min/max");
  }

  const double e_scale = std::max(1.0, std::abs(e_target));
  double lo = options.beta_min, hi = options.beta_max;
  double beta = 0.0;
  BedEval ev;
  bool done = false;
  for (int it = 0; it < options.max_iterations; ++it) {
    beta = 0.5 * (lo + hi);
    if (beta == lo || beta == hi) break;
    ev = energy_at(beta);
    if (std::abs(ev.energy - e_target) <= options.tolerance * e_scale) {
      done = true;
      break;
    }
    (ev.energy > e_target ? lo : hi) = beta;
  }
  if (!done) {
    beta = 0.5 * (lo + hi);
    ev = energy_at(beta);
    if (std::abs(ev.energy - e_target) > 1e6 * options.tolerance * e_scale) {
      throw ComputationError("solve_bed: bisection stalled, energy residual " +
                             std::to_string(ev.energy - e_target));
    }
  }

  BedSolution sol;
  sol.beta = beta;
  const double ref = beta >= 0.0 ? e_min : e_max;
  sol.z = ev.t * std::exp(beta * ref);
  sol.predicted = ev.occupations;
  sol.particle_residual = ev.count - n_particles;
  sol.energy_residual = ev.energy - e_target;
  return sol;
}

BedComparison bed_comparison(const OccupationDistribution& dist,
                             std::span<const double> sp_energies,
                             const BedOptions& options) {
  const int n = static_cast<int>(std::llround(
      pairwise_sum(std::span<const double>(dist.values))));
  BedComparison cmp;
  auto chi2 = [&](const BedSolution& sol) {
    double s = 0.0;
    for (std::size_t i = 0; i < dist.values.size(); ++i) {
      const double d = dist.values[i] - sol.predicted[i];
      s += d * d;
    }
    return s;
  };
  try {
    cmp.bare = solve_bed(sp_energies, n, dist.energy, options);
    cmp.chi2_bare = chi2(*cmp.bare);
  } catch (const std::exception& e) {
    cmp.bare_error = e.what();
  }
  try {
    cmp.dressed = solve_bed(sp_energies, n, dist.dressed_energy, options);
    cmp.chi2_dressed = chi2(*cmp.dressed);
  } catch (const std::exception& e) {
    cmp.dressed_error = e.what();
  }
  return cmp;
}

FluctuationReport occupation_fluctuations(
    const std::vector<OccupationDistribution>& ensemble,
    std::size_t n_realizations, const FluctuationOptions& options) {
  if (n_realizations < options.min_realizations) {
    throw ValidationError("occupation_fluctuations: ensemble spans " +
                          std::to_string(n_realizations) +
                          " realizations, need >= " +
                          std::to_string(options.min_realizations));
  }
  if (ensemble.empty()) throw ValidationError("occupation_fluctuations: empty ensemble");
  const std::size_t m = ensemble.front().values.size();
  for (const auto& d : ensemble) {
    if (d.values.size() != m) {
      throw ValidationError("occupation_fluctuations: mixed level counts");
    }
  }

  FluctuationReport rep;
  rep.orbital_mean.resize(m);
  rep.orbital_std.resize(m);
  std::vector<double> column(ensemble.size());
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t i = 0; i < ensemble.size(); ++i) column[i] = ensemble[i].values[s];
    const auto st = compute_moments(column);
    rep.orbital_mean[s] = st.mean;
    rep.orbital_std[s] = st.stddev;
    if (st.stddev <= 0.0) {
      ++rep.excluded_orbitals;
      continue;
    }
    for (double v : column) rep.zeta.push_back((v - st.mean) / st.stddev);
  }
  rep.normality = normality_battery(rep.zeta, options.thresholds);
  return rep;
}

ThermalVerdict local_criterion(const SpectralDecomposition& spec,
                               std::span<const double> h0_diagonal,
                               std::size_t alpha, double v, bool fluctuation_pass,
                               NpcMode npc_mode) {
  const std::size_t dim = spec.eigenvalues.size();
  if (alpha >= dim) throw ValidationError("local_criterion: alpha out of range");
  if (v < 0.0) throw ValidationError("local_criterion: V must be >= 0");

  double m1 = 0.0, m2 = 0.0;
  std::vector<double> col(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    col[k] = spec.coefficients(k, alpha);
    const double w = col[k] * col[k];
    m1 += w * h0_diagonal[k];
    m2 += w * h0_diagonal[k] * h0_diagonal[k];
  }

  ThermalVerdict verdict;
  verdict.alpha = alpha;
  verdict.delta0 = std::sqrt(std::max(0.0, m2 - m1 * m1));
  verdict.n_pc = npc_mode == NpcMode::ParticipationRatio
                     ? participation_ratio(col)
                     : exp_shannon_entropy(col);
  verdict.d_loc = verdict.delta0 / verdict.n_pc;
  verdict.ratio = verdict.d_loc > 0.0 ? v / verdict.d_loc : 0.0;
  verdict.fluctuation_pass = fluctuation_pass;
  verdict.thermal = verdict.ratio > 1.0 && fluctuation_pass;
  return verdict;
}

}  // namespace tbri
