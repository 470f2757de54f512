#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "ltmc/diffusion.hpp"
#include "ltmc/errors.hpp"

using namespace ltmc;

TEST_CASE("grid index snaps times that are already on the grid") {
  CHECK(ceil_grid_index(0.0) == 0);
  CHECK(ceil_grid_index(3.0) == 3);
  // 0.3 * 10 is slightly above 3 in floating point; the snap absorbs it
  CHECK(ceil_grid_index(0.3 * 10.0) == 3);
  CHECK(ceil_grid_index(3.0000001) == 4);
  CHECK(ceil_grid_index(2.5) == 3);
  CHECK_THROWS_AS(ceil_grid_index(-1.0), std::invalid_argument);
}

TEST_CASE("euler update applies drift over 1/n and noise over 1/sqrt(n)") {
  auto model = DiffusionModel::brownian(2).with_constant_drift({1.0, -2.0});
  Vec x{0.5, 0.25};
  Vec xi{3.0, -1.0};
  Vec next = euler_step(model, x, xi, 4);
  CHECK(next[0] == doctest::Approx(0.5 + 1.0 / 4.0 + 3.0 / 2.0).epsilon(1e-15));
  CHECK(next[1] == doctest::Approx(0.25 - 2.0 / 4.0 - 1.0 / 2.0).epsilon(1e-15));
}

TEST_CASE("chain simulation is bitwise deterministic and respects the horizon") {
  auto model = DiffusionModel::sine_diffusion_1d(1.0, 0.5);
  auto law = InnovationLaw::standard_gaussian();
  ChainPath a = simulate_chain(model, law, {0.0}, 1.0, 128, 42, 7);
  ChainPath b = simulate_chain(model, law, {0.0}, 1.0, 128, 42, 7);
  REQUIRE(a.steps == 128);
  CHECK(a.values == b.values);

  ChainPath c = simulate_chain(model, law, {0.0}, 1.0, 128, 42, 8);
  CHECK(a.values != c.values);

  // fractional horizon rounds the step count up
  ChainPath d = simulate_chain(model, law, {0.0}, 0.51, 10, 42, 7);
  CHECK(d.steps == 6);
}

TEST_CASE("chain statistics match the driving law for plain Brownian motion") {
  auto model = DiffusionModel::brownian(1);
  auto law = InnovationLaw::standard_gaussian();
  const std::size_t paths = 20000;
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t p = 0; p < paths; ++p) {
    ChainPath path = simulate_chain(model, law, {0.0}, 1.0, 16, 99, p);
    const double v = path.row(path.steps)[0];
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / paths;
  const double var = sum_sq / paths - mean * mean;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(paths)));
  CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / static_cast<double>(paths)));
}

TEST_CASE("path interpolation is linear between rows and guards the domain") {
  auto model = DiffusionModel::brownian(1);
  auto law = InnovationLaw::standard_gaussian();
  ChainPath path = simulate_chain(model, law, {1.5}, 1.0, 4, 5, 0);
  Vec at_grid = path_value(path, 0.5);
  CHECK(at_grid[0] == doctest::Approx(path.row(2)[0]).epsilon(1e-15));
  Vec mid = path_value(path, 0.625);
  CHECK(mid[0] ==
        doctest::Approx(0.5 * (path.row(2)[0] + path.row(3)[0])).epsilon(1e-14));
  CHECK(path_value(path, 0.0)[0] == 1.5);
  CHECK(path_value(path, 1.0)[0] == path.row(4)[0]);
  CHECK_THROWS_AS(path_value(path, 1.25), std::out_of_range);
  CHECK_THROWS_AS(path_value(path, -0.1), std::out_of_range);
}

TEST_CASE("divergent coefficients raise a path error carrying the first bad step") {
  DiffusionModel model;
  model.dim = 1;
  model.drift = [](const Vec& x) { return Vec{std::exp(x[0] * x[0])}; };
  model.diffusion = [](const Vec&) { Mat b(1); b(0, 0) = 1.0; return b; };
  model.sup_bound = 1.0;
  bool threw = false;
  try {
    simulate_chain(model, InnovationLaw::standard_gaussian(), {30.0}, 1.0, 4, 1, 0);
  } catch (const diverged_path_error& e) {
    threw = true;
    CHECK(e.step() == 1);
  }
  CHECK(threw);
}

TEST_CASE("scale mixtures validate their weights and report covariance scale") {
  CHECK_THROWS_AS(InnovationLaw::gaussian_scale_mixture({0.5, 0.4}, {1.0, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(InnovationLaw::gaussian_scale_mixture({0.5, 0.5}, {1.0, -1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(InnovationLaw::gaussian_scale_mixture({1.0}, {}),
                  std::invalid_argument);
  auto law = InnovationLaw::default_mixture();
  CHECK(law.covariance_scale() == doctest::Approx(1.0).epsilon(1e-15));
  auto skew = InnovationLaw::gaussian_scale_mixture({0.5, 0.5}, {1.0, 2.0});
  CHECK(skew.covariance_scale() == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("coefficient validator confirms honest constants and flags false ones") {
  std::vector<Vec> probes;
  for (int i = -20; i <= 20; ++i) probes.push_back(Vec{0.3 * i});

  auto model = DiffusionModel::sine_diffusion_1d(1.0, 0.5);
  CoefficientReport rep = validate_coefficients(model, probes);
  CHECK(rep.ellipticity_ok);
  CHECK(rep.lipschitz_ok);
  CHECK(rep.bound_ok);
  CHECK(rep.min_eigen >= 0.25);
  CHECK(rep.max_eigen <= 2.25);
  CHECK(rep.max_lipschitz_ratio <= 0.5 + 1e-9);
  CHECK(rep.max_lipschitz_ratio > 0.35);  // attained near the steep part

  // understate the Lipschitz constant: the probe pairs must expose it
  DiffusionModel lying = model;
  lying.lipschitz_const = 0.1;
  CHECK_FALSE(validate_coefficients(lying, probes).lipschitz_ok);

  DiffusionModel cramped = model;
  cramped.ellipticity_hi = 1.0;
  CHECK_FALSE(validate_coefficients(cramped, probes).ellipticity_ok);
}

TEST_CASE("innovation validator accepts identity-covariance laws") {
  auto gauss = validate_innovation(InnovationLaw::standard_gaussian(), 2, 40000, 3);
  CHECK(gauss.mean_ok);
  CHECK(gauss.covariance_ok);
  CHECK(gauss.third_moment_finite);

  auto mix = validate_innovation(InnovationLaw::default_mixture(), 2, 40000, 3);
  CHECK(mix.mean_ok);
  CHECK(mix.covariance_ok);

  // a skewed mixture with covariance 2.5 I must be flagged
  auto skew = validate_innovation(
      InnovationLaw::gaussian_scale_mixture({0.5, 0.5}, {1.0, 2.0}), 2, 40000, 3);
  CHECK_FALSE(skew.covariance_ok);
}
