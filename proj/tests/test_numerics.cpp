#include <doctest.h>

#include <cmath>
#include <vector>

#include "tbri/numerics.hpp"
#include "tbri/rng.hpp"

using namespace tbri;

TEST_SUITE("numerics") {

TEST_CASE("pairwise_sum equals the exact sum of integers") {
  std::vector<double> v;
  for (int i = 1; i <= 1000; ++i) v.push_back(i);
  CHECK(pairwise_sum(v) == 500500.0);
}

TEST_CASE("moments of a known sample") {
  const std::vector<double> v{1, 2, 3, 4, 5};
  const auto st = compute_moments(v);
  CHECK(st.mean == doctest::Approx(3.0));
  CHECK(st.variance == doctest::Approx(2.0));
  CHECK(st.skewness == doctest::Approx(0.0));
}

TEST_CASE("median of odd and even sized sets") {
  CHECK(median({3, 1, 2}) == 2);
  CHECK(median({4, 1, 2, 3}) == 2.5);
}

TEST_CASE("KS accepts normal samples and rejects uniform ones") {
  rng::Xoshiro256 gen(7);
  std::vector<double> normal, uniform;
  for (int i = 0; i < 4000; ++i) {
    normal.push_back(gen.gaussian());
    uniform.push_back(gen.uniform(-2.0, 2.0) / std::sqrt(4.0 / 3.0));
  }
  const double d_norm = ks_statistic_normal(normal);
  const double d_unif = ks_statistic_normal(uniform);
  CHECK(ks_pvalue(d_norm, normal.size()) > 0.05);
  CHECK(ks_pvalue(d_unif, uniform.size()) < 0.01);
}

TEST_CASE("gaussian stream has the right first moments") {
  rng::Xoshiro256 gen(123);
  std::vector<double> x(200000);
  for (auto& v : x) v = gen.gaussian();
  const auto st = compute_moments(x);
  CHECK(std::abs(st.mean) < 0.01);
  CHECK(st.stddev == doctest::Approx(1.0).epsilon(0.01));
  CHECK(std::abs(st.skewness) < 0.02);
  CHECK(std::abs(st.excess_kurtosis) < 0.05);
}

TEST_CASE("derive_stream separates substreams") {
  CHECK(rng::derive_stream(1, 1) != rng::derive_stream(1, 2));
  CHECK(rng::derive_stream(1, 1) != rng::derive_stream(2, 1));
  CHECK(rng::derive_stream(5, 3) == rng::derive_stream(5, 3));
}

TEST_CASE("nelder-mead minimizes a shifted quadratic") {
  const auto res = nelder_mead_2d(
      [](double x, double y) {
        return (x - 1.5) * (x - 1.5) + 2.0 * (y + 0.5) * (y + 0.5) + 3.0;
      },
      {0.0, 0.0}, {0.5, 0.5});
  CHECK(res.converged);
  CHECK(res.x[0] == doctest::Approx(1.5).epsilon(1e-4));
  CHECK(res.x[1] == doctest::Approx(-0.5).epsilon(1e-4));
  CHECK(res.value == doctest::Approx(3.0));
}

TEST_CASE("ols_slope recovers an exact line") {
  const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
  CHECK(ols_slope(x, y) == doctest::Approx(2.0));
}

}  // TEST_SUITE
