#include "tbri/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "tbri/errors.hpp"

namespace tbri {

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

MomentStats compute_moments(std::span<const double> values) {
  MomentStats st;
  st.n = values.size();
  if (st.n == 0) return st;
  st.mean = pairwise_sum(values) / static_cast<double>(st.n);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : values) {
    const double d = v - st.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  const double inv_n = 1.0 / static_cast<double>(st.n);
  m2 *= inv_n;
  m3 *= inv_n;
  m4 *= inv_n;
  st.variance = m2;
  st.stddev = std::sqrt(m2);
  if (m2 > 0.0) {
    st.skewness = m3 / (m2 * st.stddev);
    st.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  }
  return st;
}

double median(std::vector<double> values) {
  if (values.empty()) throw ValidationError("median of empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_statistic_normal(std::vector<double> samples) {
  if (samples.empty()) throw ValidationError("KS statistic of empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double cdf = norm_cdf(samples[i]);
    d = std::max(d, std::abs(cdf - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - cdf));
  }
  return d;
}

double ks_pvalue(double d_statistic, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * d_statistic;
  if (lambda < 1e-6) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    if (term < 1e-12) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ols_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ValidationError("ols_slope: need two equally sized samples of >= 2 points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw ValidationError("ols_slope: degenerate abscissae");
  return (n * sxy - sx * sy) / denom;
}

NelderMeadResult nelder_mead_2d(const std::function<double(double, double)>& f,
                                std::array<double, 2> start,
                                std::array<double, 2> step,
                                int max_iterations, double f_tol) {
  using Point = std::array<double, 2>;
  struct Vertex {
    Point x;
    double fx;
  };
  auto eval = [&](const Point& p) { return f(p[0], p[1]); };

  std::array<Vertex, 3> simplex{
      Vertex{start, eval(start)},
      Vertex{{start[0] + step[0], start[1]}, 0.0},
      Vertex{{start[0], start[1] + step[1]}, 0.0}};
  simplex[1].fx = eval(simplex[1].x);
  simplex[2].fx = eval(simplex[2].x);

  NelderMeadResult res;
  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& a, const Vertex& b) { return a.fx < b.fx; });
    if (std::abs(simplex[2].fx - simplex[0].fx) <=
        f_tol * (std::abs(simplex[0].fx) + f_tol)) {
      res.converged = true;
      break;
    }
    const Point centroid{0.5 * (simplex[0].x[0] + simplex[1].x[0]),
                         0.5 * (simplex[0].x[1] + simplex[1].x[1])};
    auto along = [&](double t) {
      return Point{centroid[0] + t * (centroid[0] - simplex[2].x[0]),
                   centroid[1] + t * (centroid[1] - simplex[2].x[1])};
    };
    const Point xr = along(1.0);
    const double fr = eval(xr);
    if (fr < simplex[0].fx) {
      const Point xe = along(2.0);
      const double fe = eval(xe);
      simplex[2] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
    } else if (fr < simplex[1].fx) {
      simplex[2] = {xr, fr};
    } else {
      const Point xc = along(fr < simplex[2].fx ? 0.5 : -0.5);
      const double fc = eval(xc);
      if (fc < std::min(fr, simplex[2].fx)) {
        simplex[2] = {xc, fc};
      } else {
        // shrink toward the best vertex
        for (int i = 1; i < 3; ++i) {
          simplex[i].x[0] = 0.5 * (simplex[i].x[0] + simplex[0].x[0]);
          simplex[i].x[1] = 0.5 * (simplex[i].x[1] + simplex[0].x[1]);
          simplex[i].fx = eval(simplex[i].x);
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(),
            [](const Vertex& a, const Vertex& b) { return a.fx < b.fx; });
  res.x = simplex[0].x;
  res.value = simplex[0].fx;
  res.iterations = iter;
  return res;
}

}  // namespace tbri
