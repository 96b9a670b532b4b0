#include <doctest.h>

#include <cmath>

#include "tbri/eigenstate_stats.hpp"
#include "tbri/errors.hpp"
#include "tbri/rng.hpp"
#include "tbri/strength_function.hpp"

using namespace tbri;

namespace {

TbriModel make_model(int n, int m, double v, std::uint64_t seed) {
  TbriParams p;
  p.n_particles = n;
  p.n_levels = m;
  p.interaction_strength = v;
  p.rng_seed = seed;
  return draw_disorder(p);
}

}  // namespace

TEST_SUITE("eigenstate-stats") {

TEST_CASE("participation ratio basics") {
  CHECK(participation_ratio(std::vector<double>{1.0, 0.0, 0.0}) == doctest::Approx(1.0));
  const double u = 1.0 / std::sqrt(5.0);
  CHECK(participation_ratio(std::vector<double>(5, u)) == doctest::Approx(5.0));
  CHECK(participation_ratio(std::vector<double>{std::sqrt(0.8), std::sqrt(0.2)}) ==
        doctest::Approx(1.0 / 0.68));
  CHECK_THROWS_AS(participation_ratio(std::vector<double>{0.5, 0.5}), ValidationError);
}

TEST_CASE("PR is invariant under sign flips and permutations") {
  std::vector<double> v{0.6, -0.4, 0.5, std::sqrt(1.0 - 0.77)};
  const double pr = participation_ratio(v);
  std::vector<double> w{-v[2], v[0], v[3], -v[1]};
  CHECK(participation_ratio(w) == doctest::Approx(pr).epsilon(1e-12));
}

TEST_CASE("PR bounds across a spectrum") {
  const auto basis = FockBasis::enumerate(4, 7);
  const auto spec = diagonalize(assemble(make_model(4, 7, 0.3, 3), basis));
  const auto prs = participation_ratios(spec);
  for (double pr : prs) {
    CHECK(pr >= 1.0 - 1e-9);
    CHECK(pr <= static_cast<double>(basis.size()) + 1e-9);
  }
}

TEST_CASE("exp-Shannon alternative is bounded by dimension and >= 1") {
  const auto basis = FockBasis::enumerate(3, 6);
  const auto spec = diagonalize(assemble(make_model(3, 6, 0.4, 5), basis));
  std::vector<double> col(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) col[k] = spec.coefficients(k, 10);
  const double npc = exp_shannon_entropy(col);
  CHECK(npc >= 1.0);
  CHECK(npc <= static_cast<double>(basis.size()));
  CHECK(npc >= participation_ratio(col) * 0.99);  // exp-entropy >= PR for these states
}

TEST_CASE("normality battery: gaussian passes, uniform fails") {
  rng::Xoshiro256 gen(11);
  std::vector<double> gauss, unif;
  for (int i = 0; i < 20000; ++i) {
    gauss.push_back(1.5 + 0.3 * gen.gaussian());
    unif.push_back(gen.uniform(0.0, 1.0));
  }
  CHECK(normality_battery(gauss).pass);
  CHECK_FALSE(normality_battery(unif).pass);
  CHECK_THROWS_AS(normality_battery(std::vector<double>(10, 0.0)), ValidationError);
}

TEST_CASE("component gaussianity: synthetic gaussian vectors pass") {
  rng::Xoshiro256 gen(3);
  std::vector<std::vector<double>> vectors;
  for (int v = 0; v < 20; ++v) {
    std::vector<double> comps(400);
    double norm = 0.0;
    for (auto& c : comps) {
      c = gen.gaussian();
      norm += c * c;
    }
    for (auto& c : comps) c /= std::sqrt(norm);
    vectors.push_back(std::move(comps));
  }
  CHECK(component_gaussianity(vectors).pass);
}

TEST_CASE("component gaussianity: V=0 permutation eigenvectors fail") {
  // a permutation column only yields samples where the envelope is nonzero,
  // so pool the whole spectrum to clear the sample floor
  const auto basis = FockBasis::enumerate(4, 7);
  const auto h = assemble(make_model(4, 7, 0.0, 9), basis);
  const auto spec = diagonalize(h);
  std::vector<std::size_t> all(basis.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto report = component_gaussianity(spec, h.h0_diagonal, all);
  CHECK_FALSE(report.pass);
}

TEST_CASE("component gaussianity: H_I-only eigenstates pass at desk scale") {
  // chaotic limit: band-center eigenstates pooled over several realizations
  const auto basis = FockBasis::enumerate(4, 9);
  std::vector<std::vector<double>> vectors;
  for (int seed = 0; seed < 6; ++seed) {
    const auto model = make_model(4, 9, 0.4, 300 + seed).interaction_only();
    const auto h = assemble(model, basis);
    const auto spec = diagonalize(h);
    const auto window = select_mid_states(spec.eigenvalues, 40);
    // H0 ordering is irrelevant for H_I alone; pool raw component vectors
    for (std::size_t alpha : window) {
      std::vector<double> v(basis.size());
      for (std::size_t k = 0; k < basis.size(); ++k) v[k] = spec.coefficients(k, alpha);
      vectors.push_back(std::move(v));
    }
  }
  const auto report = component_gaussianity(vectors);
  CHECK(report.pass);
}

TEST_CASE("PR reference profile: band center exceeds band edges") {
  const auto basis = FockBasis::enumerate(4, 9);
  PrReference ref(-3.0, 3.0, 15);
  for (int seed = 0; seed < 10; ++seed) {
    const auto model = make_model(4, 9, 0.4, 700 + seed).interaction_only();
    const auto spec = diagonalize(assemble(model, basis));
    ref.add_realization(spec.eigenvalues, participation_ratios(spec));
  }
  const double center = ref.interpolate(0.0);
  const double edge_lo = ref.interpolate(-2.5);
  const double edge_hi = ref.interpolate(2.5);
  CHECK(center > edge_lo);
  CHECK(center > edge_hi);
  CHECK(center > 0.1 * basis.size());
}

TEST_CASE("PR reference merge equals one-pass accumulation") {
  const auto basis = FockBasis::enumerate(3, 7);
  PrReference all(-3.0, 3.0, 11), a(-3.0, 3.0, 11), b(-3.0, 3.0, 11);
  for (int seed = 0; seed < 6; ++seed) {
    const auto model = make_model(3, 7, 0.4, 40 + seed).interaction_only();
    const auto spec = diagonalize(assemble(model, basis));
    const auto prs = participation_ratios(spec);
    all.add_realization(spec.eigenvalues, prs);
    (seed < 3 ? a : b).add_realization(spec.eigenvalues, prs);
  }
  a.merge(b);
  const auto pa = all.profile();
  const auto pm = a.profile();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    CHECK(pa[i] == doctest::Approx(pm[i]).epsilon(1e-12));
  }
}

}  // TEST_SUITE
