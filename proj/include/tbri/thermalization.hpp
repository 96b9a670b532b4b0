#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tbri/eigenstate_stats.hpp"
#include "tbri/fock_basis.hpp"
#include "tbri/spectral.hpp"

namespace tbri {

/// Single-particle occupation numbers of one eigenstate,
/// n_s = sum_k |C_k^alpha|^2 <k|n_s|k>. dressed_energy = <alpha|H0|alpha>,
/// shift = dressed_energy - E^alpha.
struct OccupationDistribution {
  std::size_t alpha = 0;
  std::vector<double> values;  // size M, sums to N exactly
  double energy = 0.0;
  double dressed_energy = 0.0;
  double shift = 0.0;
};

OccupationDistribution occupation_numbers(const SpectralDecomposition& spec,
                                          const FockBasis& basis,
                                          std::span<const double> h0_diagonal,
                                          std::size_t alpha);

/// Bose-Einstein solution of sum_s n_s = N, sum_s eps_s n_s = E with
/// n_s = z e^{-beta eps_s} / (1 - z e^{-beta eps_s}). beta may be negative
/// (targets above the infinite-temperature energy N*mean(eps)); z > 0 always.
struct BedSolution {
  double beta = 0.0;
  double z = 0.0;  // fugacity e^{beta mu}
  std::vector<double> predicted;
  double particle_residual = 0.0;
  double energy_residual = 0.0;

  /// Chemical potential ln(z)/beta; NaN at beta = 0 where only z is defined.
  double mu() const;
};

struct BedOptions {
  double beta_min = -50.0;
  double beta_max = 50.0;
  double tolerance = 1e-12;  // absolute, on both constraints
  int max_iterations = 200;  // per bisection level
};

/// Nested bisection: inner solve for z from the particle constraint at fixed
/// beta (monotone in z), outer solve for beta from the energy constraint
/// (E(beta) strictly decreasing, asserted by the bracket).
/// Throws ValidationError for targets at/outside (N eps_min, N eps_max) and
/// ComputationError if the bracket [beta_min, beta_max] cannot reach the
/// target.
BedSolution solve_bed(std::span<const double> sp_energies, int n_particles,
                      double e_target, const BedOptions& options = {});

/// BED solved at the bare energy E^alpha and at the dressed energy
/// E^alpha + Delta_alpha, with unweighted squared-deviation scores against
/// the measured OND. A branch whose solve fails is left empty with the error
/// recorded; the other branch is still returned.
struct BedComparison {
  std::optional<BedSolution> bare;
  std::optional<BedSolution> dressed;
  std::string bare_error;
  std::string dressed_error;
  double chi2_bare = std::numeric_limits<double>::quiet_NaN();
  double chi2_dressed = std::numeric_limits<double>::quiet_NaN();
};

BedComparison bed_comparison(const OccupationDistribution& dist,
                             std::span<const double> sp_energies,
                             const BedOptions& options = {});

struct FluctuationOptions {
  std::size_t min_realizations = 100;
  NormalityThresholds thresholds;
};

/// Occupation fluctuations over an ensemble (realizations x eigenstate
/// window, pooled): per-orbital mean and std, pooled zeta = (n - <n>)/dn,
/// and the normality verdict. Zero-variance orbitals are excluded and
/// counted. `n_realizations` is the number of disorder realizations the
/// ensemble spans (samples may also pool an eigenstate window per
/// realization).
struct FluctuationReport {
  std::vector<double> orbital_mean;
  std::vector<double> orbital_std;
  std::size_t excluded_orbitals = 0;
  std::vector<double> zeta;  // pooled samples
  NormalityReport normality;
};

FluctuationReport occupation_fluctuations(
    const std::vector<OccupationDistribution>& ensemble,
    std::size_t n_realizations, const FluctuationOptions& options = {});

enum class NpcMode { ParticipationRatio, ExpShannon };

/// delta0^2 = <alpha|H0^2|alpha> - <alpha|H0|alpha>^2, N_pc = PR_alpha
/// (or the exponentiated Shannon entropy), d_loc = delta0/N_pc.
/// thermal  <=>  V > d_loc AND the fluctuation battery passed.
/// delta0 = 0 (the V = 0 limit) gives d_loc = 0 and a non-thermal verdict.
struct ThermalVerdict {
  std::size_t alpha = 0;
  double delta0 = 0.0;
  double n_pc = 0.0;
  double d_loc = 0.0;
  double ratio = 0.0;  // V / d_loc (0 when d_loc = 0)
  bool fluctuation_pass = false;
  bool thermal = false;
};

ThermalVerdict local_criterion(const SpectralDecomposition& spec,
                               std::span<const double> h0_diagonal,
                               std::size_t alpha, double v, bool fluctuation_pass,
                               NpcMode npc_mode = NpcMode::ParticipationRatio);

}  // namespace tbri
