#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tbri {

/// Fixed-shape pairwise (recursive halving) sum; the reduction tree depends
/// only on the length, so aggregates are bit-stable across worker counts.
double pairwise_sum(std::span<const double> values);

struct MomentStats {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // population (1/n)
  double stddev = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

MomentStats compute_moments(std::span<const double> values);

double median(std::vector<double> values);  // by copy, values get sorted

/// Two-sided Kolmogorov-Smirnov statistic of the samples against the standard
/// normal CDF. Samples need not be sorted.
double ks_statistic_normal(std::vector<double> samples);

/// Asymptotic KS p-value, Q(lambda) with the small-sample correction
/// lambda = (sqrt(n) + 0.12 + 0.11/sqrt(n)) * D.
double ks_pvalue(double d_statistic, std::size_t n);

double norm_cdf(double x);

/// Ordinary least-squares slope of y against x.
double ols_slope(std::span<const double> x, std::span<const double> y);

struct NelderMeadResult {
  std::array<double, 2> x{};
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Derivative-free 2-parameter minimizer (Nelder-Mead simplex).
NelderMeadResult nelder_mead_2d(const std::function<double(double, double)>& f,
                                std::array<double, 2> start,
                                std::array<double, 2> step,
                                int max_iterations = 400, double f_tol = 1e-12);

}  // namespace tbri
