#include "tbri/strength_function.hpp"

#include <algorithm>
#include <cmath>

#include "tbri/errors.hpp"
#include "tbri/numerics.hpp"

namespace tbri {

namespace {

constexpr double kPi = 3.14159265358979323846;

double bw_density(double x, double center, double gamma) {
  const double half = 0.5 * gamma;
  return half / (kPi * ((x - center) * (x - center) + half * half));
}

double gauss_density(double x, double mean, double sigma) {
  const double z = (x - mean) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * kPi));
}

StrengthProfile make_profile(std::size_t subject, std::span<const double> positions,
                             std::span<const double> weights, const SfBinning& binning) {
  StrengthProfile p;
  p.subject = subject;

  double total = 0.0, m1 = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    total += weights[i];
    m1 += weights[i] * positions[i];
  }
  m1 /= total;
  double m2 = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const double d = positions[i] - m1;
    m2 += weights[i] * d * d;
  }
  m2 /= total;
  p.centroid = m1;
  p.exact_width = std::sqrt(std::max(0.0, m2));

  double hw = binning.half_width_factor * p.exact_width;
  if (hw <= 0.0) hw = 1e-9 * std::max(1.0, std::abs(m1));  // pure delta
  const double lo = m1 - hw;
  p.bin_width = 2.0 * hw / binning.n_bins;
  p.bin_centers.resize(binning.n_bins);
  for (int i = 0; i < binning.n_bins; ++i) {
    p.bin_centers[i] = lo + (i + 0.5) * p.bin_width;
  }
  p.weights.assign(binning.n_bins, 0.0);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    int bin = static_cast<int>((positions[i] - lo) / p.bin_width);
    bin = std::clamp(bin, 0, binning.n_bins - 1);  // tails into edge bins
    p.weights[bin] += weights[i] / total;
  }
  fit_shapes(p);
  return p;
}

ShapeFit fit_one(const StrengthProfile& p, bool breit_wigner) {
  const auto& x = p.bin_centers;
  const auto& w = p.weights;
  const double h = p.bin_width;

  auto sse_of = [&](double center, double log_width) {
    const double width = std::exp(log_width);
    double sse = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double model =
          h * (breit_wigner ? bw_density(x[i], center, width)
                            : gauss_density(x[i], center, width));
      const double d = w[i] - model;
      sse += d * d;
    }
    return sse;
  };

  // histogram moments as the scan anchor
  double m1 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m1 += w[i] * x[i];
  double m2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m2 += w[i] * (x[i] - m1) * (x[i] - m1);
  const double sigma_hat = std::max(std::sqrt(std::max(m2, 0.0)), 0.25 * h);

  double best_c = m1, best_lw = std::log(sigma_hat);
  double best = sse_of(best_c, best_lw);
  for (int ic = -3; ic <= 3; ++ic) {
    const double c = m1 + 0.4 * ic * sigma_hat;
    for (int iw = 0; iw < 25; ++iw) {
      const double lw = std::log(sigma_hat) + (-3.0 + 0.1875 * iw * 2.0);
      const double s = sse_of(c, lw);
      if (s < best) {
        best = s;
        best_c = c;
        best_lw = lw;
      }
    }
  }
  const auto nm = nelder_mead_2d(sse_of, {best_c, best_lw},
                                 {0.1 * sigma_hat, 0.2}, 400, 1e-12);

  ShapeFit fit;
  fit.center = nm.x[0];
  fit.width = std::exp(nm.x[1]);
  fit.sse = nm.value;
  fit.converged = nm.converged;
  return fit;
}

}  // namespace

std::string to_string(ShapeClass s) {
  switch (s) {
    case ShapeClass::DeltaLike: return "delta-like";
    case ShapeClass::BreitWigner: return "breit-wigner";
    case ShapeClass::Gaussian: return "gaussian";
    default: return "undetermined";
  }
}

void fit_shapes(StrengthProfile& profile) {
  const double top = profile.weights.empty()
                         ? 0.0
                         : *std::max_element(profile.weights.begin(),
                                             profile.weights.end());
  double total = 0.0;
  for (double w : profile.weights) total += w;

  bool degenerate = profile.exact_width <= 0.0 || total <= 0.0;
  if (!degenerate) {
    profile.fit_bw = fit_one(profile, true);
    profile.fit_gauss = fit_one(profile, false);
  }

  if (total > 0.0 && top / total > 0.5) {
    profile.preferred_shape = ShapeClass::DeltaLike;
  } else if (profile.fit_bw.converged || profile.fit_gauss.converged) {
    const double sse_bw =
        profile.fit_bw.converged ? profile.fit_bw.sse
                                 : std::numeric_limits<double>::infinity();
    const double sse_g =
        profile.fit_gauss.converged ? profile.fit_gauss.sse
                                    : std::numeric_limits<double>::infinity();
    profile.preferred_shape =
        sse_bw < sse_g ? ShapeClass::BreitWigner : ShapeClass::Gaussian;
  } else {
    profile.preferred_shape = ShapeClass::Undetermined;
  }
}

StrengthProfile strength_function(const SpectralDecomposition& spec, std::size_t k,
                                  const SfBinning& binning) {
  const std::size_t dim = spec.eigenvalues.size();
  if (k >= dim) throw ValidationError("strength_function: k out of range");
  std::vector<double> weights(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    const double c = spec.coefficients(k, a);
    weights[a] = c * c;
  }
  return make_profile(k, spec.eigenvalues, weights, binning);
}

StrengthProfile f_function(const SpectralDecomposition& spec,
                           std::span<const double> h0_diagonal, std::size_t alpha,
                           const SfBinning& binning) {
  const std::size_t dim = spec.eigenvalues.size();
  if (alpha >= dim) throw ValidationError("f_function: alpha out of range");
  if (h0_diagonal.size() != dim) throw ValidationError("f_function: E0 size mismatch");
  std::vector<double> weights(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const double c = spec.coefficients(k, alpha);
    weights[k] = c * c;
  }
  return make_profile(alpha, h0_diagonal, weights, binning);
}

double fermi_golden_rule_width(double v, double d_f) {
  if (!(d_f > 0.0)) throw ValidationError("fermi_golden_rule_width: d_f must be > 0");
  return 2.0 * kPi * v * v / d_f;
}

EffectiveSpacing effective_spacing(const SparseHamiltonian& h, double central_fraction) {
  if (!(central_fraction > 0.0 && central_fraction <= 1.0)) {
    throw ValidationError("effective_spacing: central_fraction in (0, 1]");
  }
  const std::size_t dim = h.dimension;
  std::vector<std::uint32_t> count(dim, 0);
  std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
  std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());

  auto touch = [&](std::size_t row, std::size_t other) {
    ++count[row];
    const double e = h.h0_diagonal[other];
    lo[row] = std::min(lo[row], e);
    hi[row] = std::max(hi[row], e);
  };
  for (const auto& t : h.off_diagonal) {
    touch(t.row, t.col);
    touch(t.col, t.row);
  }

  EffectiveSpacing sp;
  sp.per_state.reserve(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    if (count[k] == 0) {
      ++sp.excluded;
      continue;
    }
    // the covered range includes the state's own unperturbed energy
    const double span = std::max(hi[k], h.h0_diagonal[k]) -
                        std::min(lo[k], h.h0_diagonal[k]);
    sp.per_state.push_back({k, h.h0_diagonal[k], count[k], span / count[k]});
  }
  if (sp.per_state.empty()) return sp;

  std::vector<std::size_t> order(sp.per_state.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sp.per_state[a].e0 != sp.per_state[b].e0
               ? sp.per_state[a].e0 < sp.per_state[b].e0
               : a < b;
  });
  const std::size_t n = order.size();
  const std::size_t keep = std::max<std::size_t>(1, static_cast<std::size_t>(
                                                        central_fraction * n));
  const std::size_t start = (n - keep) / 2;
  std::vector<double> window, all;
  window.reserve(keep);
  all.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    all.push_back(sp.per_state[order[i]].d_f);
    if (i >= start && i < start + keep) window.push_back(sp.per_state[order[i]].d_f);
  }
  const auto w = compute_moments(window);
  const auto a = compute_moments(all);
  sp.mean = w.mean;
  sp.stddev = w.stddev;
  sp.mean_all = a.mean;
  sp.stddev_all = a.stddev;
  return sp;
}

CrossoverEstimate crossover_estimate(const EffectiveSpacing& spacing, int n_particles) {
  if (spacing.per_state.empty()) {
    throw ValidationError("crossover_estimate: empty d_f summary");
  }
  const double factor = std::sqrt(static_cast<double>(n_particles) + 1.0);
  return {spacing.mean * factor, (spacing.mean - spacing.stddev) * factor,
          (spacing.mean + spacing.stddev) * factor};
}

std::vector<std::size_t> select_mid_states(std::span<const double> values,
                                           std::size_t count) {
  const std::size_t n = values.size();
  count = std::min(count, n);
  const double med = median(std::vector<double>(values.begin(), values.end()));
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double da = std::abs(values[a] - med);
    const double db = std::abs(values[b] - med);
    return da != db ? da < db : a < b;
  });
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  return idx;
}

SfAccumulator::SfAccumulator(double half_width, int n_bins)
    : half_width_(half_width), bin_width_(2.0 * half_width / n_bins),
      sums_(n_bins, 0.0) {
  if (!(half_width > 0.0) || n_bins < 3) {
    throw ValidationError("SfAccumulator: need half_width > 0 and n_bins >= 3");
  }
}

void SfAccumulator::add_strength_functions(const SpectralDecomposition& spec,
                                           std::span<const std::size_t> k_window) {
  const std::size_t dim = spec.eigenvalues.size();
  const int n_bins = static_cast<int>(sums_.size());
  for (std::size_t k : k_window) {
    double m1 = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
      const double c = spec.coefficients(k, a);
      m1 += c * c * spec.eigenvalues[a];
    }
    double m2 = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
      const double c = spec.coefficients(k, a);
      const double d = spec.eigenvalues[a] - m1;
      m2 += c * c * d * d;
    }
    width_sum_ += std::sqrt(std::max(0.0, m2));
    ++n_subjects_;
    for (std::size_t a = 0; a < dim; ++a) {
      const double c = spec.coefficients(k, a);
      const double w = c * c;
      int bin = static_cast<int>((spec.eigenvalues[a] - m1 + half_width_) / bin_width_);
      bin = std::clamp(bin, 0, n_bins - 1);
      sums_[bin] += w;
      total_weight_ += w;
    }
  }
}

void SfAccumulator::merge_bins(std::span<const double> bin_sums, double total_weight,
                               double width_sum, std::size_t n_subjects) {
  if (bin_sums.size() != sums_.size()) {
    throw ValidationError("SfAccumulator::merge_bins: grid mismatch");
  }
  for (std::size_t i = 0; i < sums_.size(); ++i) sums_[i] += bin_sums[i];
  total_weight_ += total_weight;
  width_sum_ += width_sum;
  n_subjects_ += n_subjects;
}

double SfAccumulator::mean_exact_width() const {
  return n_subjects_ ? width_sum_ / static_cast<double>(n_subjects_) : 0.0;
}

StrengthProfile SfAccumulator::profile() const {
  if (total_weight_ <= 0.0) throw ValidationError("SfAccumulator: nothing accumulated");
  StrengthProfile p;
  p.subject = StrengthProfile::kPooled;
  const int n_bins = static_cast<int>(sums_.size());
  p.bin_width = bin_width_;
  p.bin_centers.resize(n_bins);
  p.weights.resize(n_bins);
  for (int i = 0; i < n_bins; ++i) {
    p.bin_centers[i] = -half_width_ + (i + 0.5) * bin_width_;
    p.weights[i] = sums_[i] / total_weight_;
  }
  double m1 = 0.0;
  for (int i = 0; i < n_bins; ++i) m1 += p.weights[i] * p.bin_centers[i];
  double m2 = 0.0;
  for (int i = 0; i < n_bins; ++i) {
    const double d = p.bin_centers[i] - m1;
    m2 += p.weights[i] * d * d;
  }
  p.centroid = m1;
  p.exact_width = std::sqrt(std::max(0.0, m2));
  fit_shapes(p);
  return p;
}

}  // namespace tbri
