#include "tbri/eigenstate_stats.hpp"

#include <algorithm>
#include <cmath>

#include "tbri/errors.hpp"
#include "tbri/numerics.hpp"

namespace tbri {

double participation_ratio(std::span<const double> components) {
  double norm2 = 0.0, sum4 = 0.0;
  for (double c : components) {
    const double c2 = c * c;
    norm2 += c2;
    sum4 += c2 * c2;
  }
  if (std::abs(norm2 - 1.0) > 1e-8) {
    throw ValidationError("participation_ratio: vector norm deviates from 1 by " +
                          std::to_string(std::abs(norm2 - 1.0)));
  }
  return 1.0 / sum4;
}

double exp_shannon_entropy(std::span<const double> components) {
  double norm2 = 0.0, s = 0.0;
  for (double c : components) {
    const double p = c * c;
    norm2 += p;
    if (p > 0.0) s -= p * std::log(p);
  }
  if (std::abs(norm2 - 1.0) > 1e-8) {
    throw ValidationError("exp_shannon_entropy: vector not normalized");
  }
  return std::exp(s);
}

std::vector<double> participation_ratios(const SpectralDecomposition& spec) {
  const std::size_t dim = spec.eigenvalues.size();
  std::vector<double> pr(dim);
  std::vector<double> col(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t k = 0; k < dim; ++k) col[k] = spec.coefficients(k, a);
    pr[a] = participation_ratio(col);
  }
  return pr;
}

NormalityReport normality_battery(std::vector<double> samples,
                                  const NormalityThresholds& thresholds) {
  if (samples.size() < thresholds.min_samples) {
    throw ValidationError("normality_battery: " + std::to_string(samples.size()) +
                          " samples, need >= " +
                          std::to_string(thresholds.min_samples));
  }
  NormalityReport rep;
  rep.n = samples.size();
  const auto st = compute_moments(samples);
  rep.skewness = st.skewness;
  rep.excess_kurtosis = st.excess_kurtosis;
  if (st.stddev <= 0.0) {
    rep.pass = false;
    return rep;
  }
  for (auto& v : samples) v = (v - st.mean) / st.stddev;

  std::vector<double> ks_sample;
  if (samples.size() > thresholds.ks_max_samples) {
    const std::size_t stride = (samples.size() + thresholds.ks_max_samples - 1) /
                               thresholds.ks_max_samples;
    for (std::size_t i = 0; i < samples.size(); i += stride) {
      ks_sample.push_back(samples[i]);
    }
  } else {
    ks_sample = samples;
  }
  const std::size_t ks_n = ks_sample.size();
  rep.ks_statistic = ks_statistic_normal(std::move(ks_sample));
  rep.ks_pvalue = ks_pvalue(rep.ks_statistic, ks_n);

  rep.pass = std::abs(rep.skewness) < thresholds.max_abs_skewness &&
             std::abs(rep.excess_kurtosis) < thresholds.max_abs_kurtosis &&
             rep.ks_pvalue > thresholds.min_ks_pvalue;
  return rep;
}

NormalityReport component_gaussianity(
    const std::vector<std::vector<double>>& vectors_in_e0_order,
    const GaussianityOptions& options) {
  const int w = options.half_window;
  std::vector<double> rescaled;
  for (const auto& vec : vectors_in_e0_order) {
    const int n = static_cast<int>(vec.size());
    for (int k = 0; k < n; ++k) {
      const int lo = std::max(0, k - w);
      const int hi = std::min(n - 1, k + w);
      double env = 0.0;
      for (int i = lo; i <= hi; ++i) env += vec[i] * vec[i];
      env /= (hi - lo + 1);
      if (env > 0.0) rescaled.push_back(vec[k] / std::sqrt(env));
    }
  }
  return normality_battery(std::move(rescaled), options.thresholds);
}

NormalityReport component_gaussianity(const SpectralDecomposition& spec,
                                      std::span<const double> h0_diagonal,
                                      std::span<const std::size_t> alphas,
                                      const GaussianityOptions& options) {
  const std::size_t dim = spec.eigenvalues.size();
  std::vector<std::size_t> order(dim);
  for (std::size_t i = 0; i < dim; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return h0_diagonal[a] != h0_diagonal[b] ? h0_diagonal[a] < h0_diagonal[b]
                                            : a < b;
  });
  std::vector<std::vector<double>> vectors;
  vectors.reserve(alphas.size());
  for (std::size_t alpha : alphas) {
    std::vector<double> v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = spec.coefficients(order[i], alpha);
    vectors.push_back(std::move(v));
  }
  return component_gaussianity(vectors, options);
}

PrReference::PrReference(double e_min, double e_max, int n_bins)
    : e_min_(e_min), e_max_(e_max), bin_width_((e_max - e_min) / n_bins),
      centers_(n_bins), sums_(n_bins, 0.0), counts_(n_bins, 0.0) {
  if (!(e_max > e_min) || n_bins < 2) {
    throw ValidationError("PrReference: need e_max > e_min and n_bins >= 2");
  }
  for (int i = 0; i < n_bins; ++i) centers_[i] = e_min + (i + 0.5) * bin_width_;
}

void PrReference::add_realization(std::span<const double> eigenvalues,
                                  std::span<const double> prs) {
  if (eigenvalues.size() != prs.size()) {
    throw ValidationError("PrReference: size mismatch");
  }
  const auto st = compute_moments(eigenvalues);
  if (st.stddev <= 0.0) throw ValidationError("PrReference: degenerate spectrum");
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    const double e = (eigenvalues[i] - st.mean) / st.stddev;
    int bin = static_cast<int>((e - e_min_) / bin_width_);
    bin = std::clamp(bin, 0, static_cast<int>(centers_.size()) - 1);
    sums_[bin] += prs[i];
    counts_[bin] += 1.0;
  }
}

void PrReference::merge(const PrReference& other) {
  if (other.centers_.size() != centers_.size() || other.e_min_ != e_min_ ||
      other.e_max_ != e_max_) {
    throw ValidationError("PrReference::merge: grid mismatch");
  }
  for (std::size_t i = 0; i < sums_.size(); ++i) {
    sums_[i] += other.sums_[i];
    counts_[i] += other.counts_[i];
  }
}

std::vector<double> PrReference::profile() const {
  std::vector<double> p(centers_.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (counts_[i] > 0.0) p[i] = sums_[i] / counts_[i];
  }
  return p;
}

double PrReference::interpolate(double e) const {
  const auto prof = profile();
  const int n = static_cast<int>(prof.size());
  // fractional bin coordinate
  double t = (e - e_min_) / bin_width_ - 0.5;
  t = std::clamp(t, 0.0, static_cast<double>(n - 1));
  const int i0 = std::min(static_cast<int>(t), n - 2);
  const double frac = t - i0;
  // skip empty bins by snapping to the nearer non-empty neighbor
  double p0 = prof[i0], p1 = prof[i0 + 1];
  if (counts_[i0] == 0.0 && counts_[i0 + 1] > 0.0) p0 = p1;
  if (counts_[i0 + 1] == 0.0 && counts_[i0] > 0.0) p1 = p0;
  return (1.0 - frac) * p0 + frac * p1;
}

}  // namespace tbri
