#include <doctest.h>

#include <cmath>

#include "tbri/errors.hpp"
#include "tbri/numerics.hpp"
#include "tbri/rng.hpp"
#include "tbri/strength_function.hpp"
#include "tbri/thermalization.hpp"

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

TEST_SUITE("thermalization") {

TEST_CASE("occupations at V=0 reproduce the basis state, zero shift") {
  const auto basis = FockBasis::enumerate(3, 5);
  const auto h = assemble(make_model(3, 5, 0.0, 4), basis);
  const auto spec = diagonalize(h);
  for (std::size_t a = 0; a < basis.size(); a += 7) {
    const auto dist = occupation_numbers(spec, basis, h.h0_diagonal, a);
    CHECK(std::abs(dist.shift) < 1e-10);
    // the eigenstate is a single basis state; occupations must be integers
    double sum = 0.0;
    for (double n : dist.values) {
      CHECK(n == doctest::Approx(std::round(n)).epsilon(1e-10));
      sum += n;
    }
    CHECK(sum == doctest::Approx(3.0).epsilon(1e-12));
  }
}

TEST_CASE("exact OND identities at finite V") {
  const auto basis = FockBasis::enumerate(4, 9);
  const auto h = assemble(make_model(4, 9, 0.3, 17), basis);
  const auto spec = diagonalize(h);
  for (std::size_t a = 0; a < basis.size(); a += 31) {
    const auto dist = occupation_numbers(spec, basis, h.h0_diagonal, a);
    const double total = pairwise_sum(dist.values);
    CHECK(total == doctest::Approx(4.0).epsilon(1e-10));
    // sum_s eps_s n_s = <alpha|H0|alpha>
    const auto& eps = spec;  // silence unused warning pattern
    (void)eps;
    double e_h0 = 0.0;
    const auto model = make_model(4, 9, 0.3, 17);
    for (int s = 0; s < 9; ++s) e_h0 += model.sp_energies[s] * dist.values[s];
    CHECK(e_h0 == doctest::Approx(dist.dressed_energy)
                      .epsilon(1e-9)
                      .scale(std::abs(dist.dressed_energy) + 1));
    for (double n : dist.values) {
      CHECK(n >= -1e-12);
      CHECK(n <= 4.0 + 1e-12);
    }
  }
}

TEST_CASE("shift is positive below mid-spectrum for chaotic states") {
  // where the DOS rises, <alpha|H0|alpha> sits above E^alpha
  const auto basis = FockBasis::enumerate(4, 9);
  double mean_shift = 0.0;
  int count = 0;
  for (int seed = 0; seed < 5; ++seed) {
    const auto h = assemble(make_model(4, 9, 0.4, 900 + seed), basis);
    const auto spec = diagonalize(h);
    for (std::size_t a = basis.size() / 10; a < basis.size() / 3; a += 5) {
      mean_shift += occupation_numbers(spec, basis, h.h0_diagonal, a).shift;
      ++count;
    }
  }
  mean_shift /= count;
  CHECK(mean_shift > 0.0);
}

TEST_CASE("BED at the infinite-temperature point: beta = 0, uniform occupations") {
  const auto model = make_model(6, 11, 0.0, 5);
  const double e_bar = pairwise_sum(model.sp_energies) / 11.0;
  const auto sol = solve_bed(model.sp_energies, 6, 6.0 * e_bar);
  CHECK(std::abs(sol.beta) < 1e-8);
  for (double n : sol.predicted) CHECK(n == doctest::Approx(6.0 / 11.0).epsilon(1e-6));
  CHECK(std::abs(sol.particle_residual) < 1e-9);
  CHECK(std::abs(sol.energy_residual) < 1e-9 * 6.0 * e_bar);
}

TEST_CASE("BED two-level symmetric point") {
  const std::vector<double> eps{0.0, 1.0};
  const auto sol = solve_bed(eps, 2, 1.0);
  CHECK(std::abs(sol.beta) < 1e-8);
  CHECK(sol.predicted[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(sol.predicted[1] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("BED round-trip on 1000 random instances") {
  rng::Xoshiro256 gen(2024);
  int negative_beta_above_midpoint = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = 3 + static_cast<int>(gen.uniform01() * 9);
    const int n = 1 + static_cast<int>(gen.uniform01() * 7);
    std::vector<double> eps(m);
    for (auto& e : eps) e = gen.uniform(0.0, m);
    std::sort(eps.begin(), eps.end());
    if (eps.back() - eps.front() < 0.1) continue;  // degenerate draw, skip
    // pick the target through the exact constraint curve so it is attainable:
    // occupations at beta_star with the particle constraint solved by hand
    const double beta_star = gen.uniform(-25.0, 25.0);
    auto energy_at = [&](double beta) {
      double lo = 0.0, hi = 1.0 - 1e-16;
      const double e_ref = beta >= 0 ? eps.front() : eps.back();
      double energy = 0.0;
      for (int it = 0; it < 200; ++it) {
        const double t = 0.5 * (lo + hi);
        double cnt = 0.0;
        energy = 0.0;
        for (double e : eps) {
          const double x = t * std::exp(-beta * (e - e_ref));
          cnt += x / (1.0 - x);
          energy += e * x / (1.0 - x);
        }
        if (std::abs(cnt - n) < 1e-13 * n) break;
        (cnt < n ? lo : hi) = t;
      }
      return energy;
    };
    const double e_target = energy_at(beta_star);
    if (!(e_target > n * eps.front() && e_target < n * eps.back())) continue;

    const auto sol = solve_bed(eps, n, e_target);
    CHECK(std::abs(sol.particle_residual) < 1e-9 * n);
    CHECK(std::abs(sol.energy_residual) < 1e-9 * std::max(1.0, std::abs(e_target)));
    // plug the solution back into the constraints independently
    double cnt = 0.0, energy = 0.0;
    for (int s = 0; s < m; ++s) {
      const double nb = 1.0 / (std::exp(sol.beta * eps[s]) / sol.z - 1.0);
      cnt += nb;
      energy += eps[s] * nb;
    }
    CHECK(cnt == doctest::Approx(n).epsilon(1e-7));
    CHECK(energy == doctest::Approx(e_target).epsilon(1e-7).scale(std::abs(e_target) + 1));

    const double e_mid = n * pairwise_sum(eps) / m;
    if (e_target > e_mid + 1e-6) {
      CHECK(sol.beta < 0.0);
      ++negative_beta_above_midpoint;
    }
    // occupations positive: z e^{-beta eps} < 1 for all s
    for (double nb : sol.predicted) CHECK(nb > 0.0);
  }
  CHECK(negative_beta_above_midpoint > 100);
}

TEST_CASE("BED rejects out-of-range targets") {
  const std::vector<double> eps{0.0, 1.0, 2.0};
  CHECK_THROWS_AS(solve_bed(eps, 2, 0.0), ValidationError);   // at N*eps_min
  CHECK_THROWS_AS(solve_bed(eps, 2, 4.0), ValidationError);   // at N*eps_max
  CHECK_THROWS_AS(solve_bed(eps, 2, -1.0), ValidationError);
  CHECK_THROWS_AS(solve_bed(eps, 2, 9.0), ValidationError);
}

TEST_CASE("bed_comparison: V=0 gives identical branches") {
  const auto basis = FockBasis::enumerate(3, 6);
  const auto model = make_model(3, 6, 0.0, 13);
  const auto h = assemble(model, basis);
  const auto spec = diagonalize(h);
  const auto dist = occupation_numbers(spec, basis, h.h0_diagonal, basis.size() / 2);
  const auto cmp = bed_comparison(dist, model.sp_energies);
  REQUIRE(cmp.bare.has_value());
  REQUIRE(cmp.dressed.has_value());
  CHECK(cmp.bare->beta == doctest::Approx(cmp.dressed->beta).epsilon(1e-9));
  CHECK(cmp.chi2_bare == doctest::Approx(cmp.chi2_dressed).epsilon(1e-9));
}

TEST_CASE("bed_comparison survives an unsolvable bare branch") {
  const auto basis = FockBasis::enumerate(3, 6);
  const auto model = make_model(3, 6, 1.5, 7);  // strong coupling pushes E^alpha far down
  const auto h = assemble(model, basis);
  const auto spec = diagonalize(h);
  const auto dist = occupation_numbers(spec, basis, h.h0_diagonal, 0);
  REQUIRE(dist.energy < 3.0 * model.sp_energies.front());  // below N*eps_min
  const auto cmp = bed_comparison(dist, model.sp_energies);
  CHECK_FALSE(cmp.bare.has_value());
  CHECK_FALSE(cmp.bare_error.empty());
  CHECK(cmp.dressed.has_value());  // dressed energy is always attainable
}

TEST_CASE("occupation_fluctuations: synthetic gaussian ensemble passes") {
  rng::Xoshiro256 gen(5);
  std::vector<OccupationDistribution> ensemble;
  const std::vector<double> means{2.0, 1.2, 0.5, 0.2, 0.1};
  const std::vector<double> stds{0.20, 0.15, 0.08, 0.05, 0.03};
  for (int r = 0; r < 400; ++r) {
    OccupationDistribution d;
    for (int s = 0; s < 5; ++s) d.values.push_back(means[s] + stds[s] * gen.gaussian());
    ensemble.push_back(std::move(d));
  }
  const auto rep = occupation_fluctuations(ensemble, 400);
  CHECK(rep.excluded_orbitals == 0);
  CHECK(rep.normality.pass);
  for (int s = 0; s < 5; ++s) {
    CHECK(rep.orbital_mean[s] == doctest::Approx(means[s]).epsilon(0.05));
    CHECK(rep.orbital_std[s] == doctest::Approx(stds[s]).epsilon(0.15));
  }
}

TEST_CASE("occupation_fluctuations excludes zero-variance orbitals") {
  std::vector<OccupationDistribution> ensemble;
  rng::Xoshiro256 gen(9);
  for (int r = 0; r < 150; ++r) {
    OccupationDistribution d;
    d.values = {1.0, 2.0 + 0.1 * gen.gaussian(), 1.5 + 0.2 * gen.gaussian(),
                0.5 + 0.05 * gen.gaussian(), 0.3 + 0.07 * gen.gaussian(),
                0.8 + 0.09 * gen.gaussian(), 0.6 + 0.04 * gen.gaussian(),
                0.2 + 0.03 * gen.gaussian()};  // orbital 0 is frozen
    ensemble.push_back(std::move(d));
  }
  const auto rep = occupation_fluctuations(ensemble, 150);
  CHECK(rep.excluded_orbitals == 1);
  CHECK(rep.zeta.size() == 150 * 7);
}

TEST_CASE("occupation_fluctuations enforces the realization floor") {
  std::vector<OccupationDistribution> tiny(5);
  CHECK_THROWS_AS(occupation_fluctuations(tiny, 5), ValidationError);
}

TEST_CASE("local criterion: V=0 is non-thermal with d_loc = 0") {
  const auto basis = FockBasis::enumerate(3, 6);
  const auto h = assemble(make_model(3, 6, 0.0, 3), basis);
  const auto spec = diagonalize(h);
  const auto v = local_criterion(spec, h.h0_diagonal, 5, 0.0, true);
  CHECK(v.delta0 == doctest::Approx(0.0));
  CHECK(v.d_loc == 0.0);
  CHECK(v.ratio == 0.0);
  CHECK_FALSE(v.thermal);
}

TEST_CASE("local criterion: delta0 matches the f_function width") {
  const auto basis = FockBasis::enumerate(4, 9);
  const auto h = assemble(make_model(4, 9, 0.3, 23), basis);
  const auto spec = diagonalize(h);
  const std::size_t alpha = basis.size() / 2;
  const auto verdict = local_criterion(spec, h.h0_diagonal, alpha, 0.3, true);
  const auto f = f_function(spec, h.h0_diagonal, alpha);
  CHECK(verdict.delta0 == doctest::Approx(f.exact_width).epsilon(1e-9));
  // binned variance agrees within 2%
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < f.weights.size(); ++i) m1 += f.weights[i] * f.bin_centers[i];
  for (std::size_t i = 0; i < f.weights.size(); ++i) {
    m2 += f.weights[i] * (f.bin_centers[i] - m1) * (f.bin_centers[i] - m1);
  }
  CHECK(std::sqrt(m2) == doctest::Approx(verdict.delta0).epsilon(0.02));
}

TEST_CASE("local criterion verdict logic") {
  const auto basis = FockBasis::enumerate(4, 7);
  const auto h = assemble(make_model(4, 7, 0.5, 4), basis);
  const auto spec = diagonalize(h);
  const std::size_t alpha = basis.size() / 2;
  const auto strong = local_criterion(spec, h.h0_diagonal, alpha, 50.0, true);
  CHECK(strong.ratio > 1.0);
  CHECK(strong.thermal);
  const auto no_fluct = local_criterion(spec, h.h0_diagonal, alpha, 50.0, false);
  CHECK_FALSE(no_fluct.thermal);  // conjunction with the fluctuation test
  const auto weak = local_criterion(spec, h.h0_diagonal, alpha, 1e-6, true);
  CHECK_FALSE(weak.thermal);
}

}  // TEST_SUITE
