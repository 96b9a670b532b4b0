#pragma once

#include <span>
#include <vector>

#include "tbri/spectral.hpp"

namespace tbri {

/// PR_alpha = 1 / sum_k |C_k|^4 for a normalized vector.
/// Throws ValidationError if the norm deviates from 1 by more than 1e-8.
double participation_ratio(std::span<const double> components);

/// exp(-sum p ln p): the exponentiated Shannon entropy alternative for N_pc.
double exp_shannon_entropy(std::span<const double> components);

std::vector<double> participation_ratios(const SpectralDecomposition& spec);

struct NormalityThresholds {
  double max_abs_skewness = 0.15;
  double max_abs_kurtosis = 0.30;
  double min_ks_pvalue = 0.05;
  std::size_t min_samples = 1000;
  // KS is evaluated on a deterministic stride-thinned subsample of at most
  // this many points so the test's power stays fixed; skewness/kurtosis use
  // the full pool.
  std::size_t ks_max_samples = 2000;
};

struct NormalityReport {
  std::size_t n = 0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double ks_statistic = 0.0;
  double ks_pvalue = 0.0;
  bool pass = false;
};

/// Standardizes the samples and runs the composite battery:
/// |skew| < 0.15, |excess kurtosis| < 0.3, KS p > 0.05.
NormalityReport normality_battery(std::vector<double> samples,
                                  const NormalityThresholds& thresholds = {});

struct GaussianityOptions {
  int half_window = 10;  // moving-window envelope over 2w+1 = 21 components
  NormalityThresholds thresholds;
};

/// Component-randomness test: each vector holds eigenvector components in
/// E0-ascending basis order; components are rescaled by the moving-window
/// mean of |C|^2 (the local envelope) and the pooled rescaled amplitudes are
/// sent through the normality battery.
NormalityReport component_gaussianity(
    const std::vector<std::vector<double>>& vectors_in_e0_order,
    const GaussianityOptions& options = {});

/// Convenience: extracts the eigenstates `alphas` of `spec` with components
/// reordered by ascending E0 and runs component_gaussianity.
NormalityReport component_gaussianity(const SpectralDecomposition& spec,
                                      std::span<const double> h0_diagonal,
                                      std::span<const std::size_t> alphas,
                                      const GaussianityOptions& options = {});

/// PR_infinity profile of the H_I-only reference, averaged over realizations
/// on a standardized-energy grid e = (E - mean) / std, for ratio-taking.
class PrReference {
 public:
  PrReference(double e_min, double e_max, int n_bins);

  /// Adds one reference realization (its own spectrum standardized in-place).
  void add_realization(std::span<const double> eigenvalues,
                       std::span<const double> prs);

  void merge(const PrReference& other);

  /// Mean PR at standardized energy e, linear interpolation between bin
  /// centers, clamped at the ends.
  double interpolate(double e) const;

  std::span<const double> bin_centers() const { return centers_; }
  std::vector<double> profile() const;  // mean PR per bin (0 where empty)

 private:
  double e_min_, e_max_, bin_width_;
  std::vector<double> centers_;
  std::vector<double> sums_;
  std::vector<double> counts_;
};

}  // namespace tbri
