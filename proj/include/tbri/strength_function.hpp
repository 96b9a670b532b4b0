#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "tbri/spectral.hpp"

namespace tbri {

enum class ShapeClass { DeltaLike, BreitWigner, Gaussian, Undetermined };

std::string to_string(ShapeClass s);

struct ShapeFit {
  double center = 0.0;
  double width = 0.0;  // Gamma (FWHM) for BW, sigma for Gaussian
  double sse = std::numeric_limits<double>::infinity();
  bool converged = false;
};

/// Binned strength function (or F-function) of one subject, or of a pooled
/// ensemble (subject = kPooled). Weights are normalized to 1; the first and
/// last bins aggregate the tails outside the range.
struct StrengthProfile {
  static constexpr std::size_t kPooled = std::numeric_limits<std::size_t>::max();

  std::size_t subject = 0;
  double centroid = 0.0;     // exact first moment
  double exact_width = 0.0;  // exact sqrt(second central moment)
  std::vector<double> bin_centers;
  std::vector<double> weights;
  double bin_width = 0.0;
  ShapeFit fit_bw;
  ShapeFit fit_gauss;
  ShapeClass preferred_shape = ShapeClass::Undetermined;
};

struct SfBinning {
  int n_bins = 51;
  double half_width_factor = 4.0;  // range = centroid +/- factor * exact_width
};

/// Strength function of basis state k: weights |C_k^alpha|^2 at E^alpha.
StrengthProfile strength_function(const SpectralDecomposition& spec, std::size_t k,
                                  const SfBinning& binning = {});

/// F-function of eigenstate alpha: weights |C_k^alpha|^2 at E0_k.
StrengthProfile f_function(const SpectralDecomposition& spec,
                           std::span<const double> h0_diagonal, std::size_t alpha,
                           const SfBinning& binning = {});

/// Least-squares Breit-Wigner and Gaussian fits of the normalized histogram;
/// classifies the shape (delta-like when the top bin holds > 0.5 of the
/// weight, otherwise the smaller SSE wins, undetermined if no fit converges).
void fit_shapes(StrengthProfile& profile);

/// Fermi golden rule half-width, 2 pi V^2 / d_f.
double fermi_golden_rule_width(double v, double d_f);

struct EffectiveSpacing {
  struct PerState {
    std::size_t k = 0;
    double e0 = 0.0;
    std::uint32_t m_eff = 0;
    double d_f = 0.0;
  };
  std::vector<PerState> per_state;  // rows with m_eff >= 1 only
  std::size_t excluded = 0;         // isolated rows (d_f undefined)
  double mean = 0.0;                // over the central E0 window
  double stddev = 0.0;
  double mean_all = 0.0;
  double stddev_all = 0.0;
};

/// d_f(E0_k) = (max - min E0 over structurally coupled states) / M_eff^k.
/// The summary mean/std is taken over the central `central_fraction` of rows
/// ordered by E0 (the crossover analysis concerns mid-spectrum states).
EffectiveSpacing effective_spacing(const SparseHamiltonian& h,
                                   double central_fraction = 0.5);

struct CrossoverEstimate {
  double v_c = 0.0;
  double v_low = 0.0;
  double v_high = 0.0;
};

/// V_c = <d_f> sqrt(N+1), band endpoints (<d_f> +/- delta d_f) sqrt(N+1).
CrossoverEstimate crossover_estimate(const EffectiveSpacing& spacing, int n_particles);

/// Indices of the `count` entries of `values` closest to their median
/// (deterministic tie-break by index), returned in ascending index order.
std::vector<std::size_t> select_mid_states(std::span<const double> values,
                                           std::size_t count);

/// Pools centered strength functions (x = E^alpha - centroid_k) from many
/// subjects/realizations onto a fixed grid so the ensemble-averaged profile
/// can be fitted once. The grid is symmetric about 0.
class SfAccumulator {
 public:
  SfAccumulator(double half_width, int n_bins);

  void add_strength_functions(const SpectralDecomposition& spec,
                              std::span<const std::size_t> k_window);

  /// Merges bin sums from per-realization histograms (same grid required).
  void merge_bins(std::span<const double> bin_sums, double total_weight,
                  double width_sum, std::size_t n_subjects);

  StrengthProfile profile() const;  // normalized + fitted
  double mean_exact_width() const;  // arithmetic mean over added subjects

  std::span<const double> bin_sums() const { return sums_; }
  double total_weight() const { return total_weight_; }
  double width_sum() const { return width_sum_; }
  std::size_t subjects() const { return n_subjects_; }
  double bin_width() const { return bin_width_; }

 private:
  double half_width_;
  double bin_width_;
  std::vector<double> sums_;
  double total_weight_ = 0.0;
  double width_sum_ = 0.0;
  std::size_t n_subjects_ = 0;
};

}  // namespace tbri
