#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "ltmc/errors.hpp"
#include "ltmc/functionals.hpp"
#include "ltmc/stats.hpp"

using namespace ltmc;

namespace {

ChainPath make_brownian_path(double T, std::size_t n, std::uint64_t seed,
                             std::uint64_t path_index) {
  return simulate_chain(DiffusionModel::brownian(2),
                        InnovationLaw::standard_gaussian(), {0.0, 0.0}, T, n,
                        seed, path_index);
}

}  // namespace

TEST_CASE("riemann sums respect the half-open window convention") {
  ChainPath path = make_brownian_path(1.0, 4, 11, 0);
  CumulativeFunctional cf = accumulate_functional(path, constant_symbol(2, 2.0));
  CHECK(functional_value(cf, 0.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(functional_value(cf, 0.5, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  // only the grid point at 0.25 lies in [0.25, 0.3)
  CHECK(functional_value(cf, 0.25, 0.3) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(functional_value(cf, 0.3, 0.3) == 0.0);
  CHECK_THROWS_AS(functional_value(cf, 0.2, 1.5), std::out_of_range);
  CHECK_THROWS_AS(functional_value(cf, 0.5, 0.2), std::invalid_argument);
}

TEST_CASE("riemann sums match a hand accumulation for a varying symbol") {
  ChainPath path = make_brownian_path(1.0, 8, 23, 5);
  Symbol bump = gaussian_bump_symbol(2, 1.0, 1.0, {0.0, 0.0});
  CumulativeFunctional cf = accumulate_functional(path, bump);
  double hand = 0.0;
  for (std::size_t k = 2; k < 6; ++k) hand += bump.eval(path.state(k)) / 8.0;
  CHECK(functional_value(cf, 0.25, 0.75) == doctest::Approx(hand).epsilon(1e-15));
}

TEST_CASE("negative symbols are rejected during accumulation") {
  ChainPath path = make_brownian_path(1.0, 4, 11, 0);
  Symbol bad;
  bad.dim = 2;
  bad.eval = [](const Vec& x) { return x[0] - 1e6; };
  CHECK_THROWS_AS(accumulate_functional(path, bad), invalid_run_error);
}

TEST_CASE("broken line of a constant symbol is exactly linear in both arguments") {
  ChainPath path = make_brownian_path(1.0, 4, 7, 3);
  const double c = 1.7;
  CumulativeFunctional cf = accumulate_functional(path, constant_symbol(2, c));
  const double pairs[][2] = {{0.0, 1.0},  {0.0, 0.37}, {0.13, 0.13},
                             {0.13, 0.21}, {0.26, 0.74}, {0.5, 1.0},
                             {0.99, 1.0}, {0.125, 0.625}};
  for (const auto& p : pairs) {
    CHECK(broken_line_value(cf, p[0], p[1]) ==
          doctest::Approx(c * (p[1] - p[0])).epsilon(1e-13));
  }
}

TEST_CASE("broken line interpolates the riemann sum and stays continuous") {
  ChainPath path = make_brownian_path(1.0, 8, 29, 1);
  Symbol bump = gaussian_bump_symbol(2, 2.0, 0.7, {0.1, -0.1});
  CumulativeFunctional cf = accumulate_functional(path, bump);

  // at grid endpoints the interpolation matches the sum exactly
  for (std::size_t i = 0; i <= 8; ++i) {
    const double t = static_cast<double>(i) / 8.0;
    CHECK(broken_line_value(cf, 0.0, t) ==
          doctest::Approx(functional_value(cf, 0.0, t)).epsilon(1e-15));
  }
  // vanishes on the diagonal
  for (double s : {0.0, 0.2, 0.33, 0.875, 1.0})
    CHECK(broken_line_value(cf, s, s) == 0.0);
  // mid-cell value is the half cell
  const double half_cell = 0.5 * (functional_value(cf, 0.0, 0.5) -
                                  functional_value(cf, 0.0, 0.375));
  CHECK(broken_line_value(cf, 0.0, 0.4375) ==
        doctest::Approx(functional_value(cf, 0.0, 0.375) + half_cell).epsilon(1e-13));
  // continuity across a cell boundary in both arguments
  for (double eps : {1e-9, 1e-11}) {
    CHECK(std::abs(broken_line_value(cf, 0.0, 0.375 + eps) -
                   broken_line_value(cf, 0.0, 0.375 - eps)) < 1e-7);
    CHECK(std::abs(broken_line_value(cf, 0.25 + eps, 0.8) -
                   broken_line_value(cf, 0.25 - eps, 0.8)) < 1e-7);
  }
}

TEST_CASE("broken-line sampling is deterministic and screens divergence") {
  Symbol f = constant_symbol(1, 1.0);
  auto model = DiffusionModel::sine_diffusion_1d(1.0, 0.5);
  auto law = InnovationLaw::standard_gaussian();
  FunctionalSample a = sample_broken_line(model, law, {0.0}, f, 0.0, 1.0, 16, 200, 77);
  FunctionalSample b = sample_broken_line(model, law, {0.0}, f, 0.0, 1.0, 16, 200, 77);
  CHECK(a.values == b.values);
  CHECK(a.diverged == 0);
  CHECK(a.values.size() == 200);

  DiffusionModel exploding;
  exploding.dim = 1;
  exploding.drift = [](const Vec& x) { return Vec{std::exp(x[0] * x[0])}; };
  exploding.diffusion = [](const Vec&) { Mat b(1); b(0, 0) = 1.0; return b; };
  CHECK_THROWS_AS(
      sample_broken_line(exploding, law, {30.0}, f, 0.0, 1.0, 4, 8, 1),
      invalid_run_error);

  Symbol negative;
  negative.dim = 1;
  negative.eval = [](const Vec&) { return -1.0; };
  CHECK_THROWS_AS(
      sample_broken_line(model, law, {0.0}, negative, 0.0, 1.0, 4, 8, 1),
      invalid_run_error);
}

TEST_CASE("brownian occupation characteristic: frozen values and additivity") {
  Measure k3 = nested_circles_measure(3);
  const Vec origin{0.0, 0.0};
  CHECK(brownian_characteristic(k3, origin, 0.0, 1.0) ==
        doctest::Approx(0.33945058766732988).epsilon(1e-10));
  CHECK(brownian_characteristic(k3, origin, 0.0, 0.5) ==
        doctest::Approx(0.23903970824013399).epsilon(1e-10));
  Measure c = Measure::circle({0.0, 0.0}, 0.1, 1.0);
  CHECK(brownian_characteristic(c, origin, 0.0, 0.5) ==
        doctest::Approx(0.64265645196300454).epsilon(1e-10));
  // windows add up
  const double whole = brownian_characteristic(k3, origin, 0.0, 0.5);
  const double split = brownian_characteristic(k3, origin, 0.0, 0.25) +
                       brownian_characteristic(k3, origin, 0.25, 0.5);
  CHECK(whole == doctest::Approx(split).epsilon(1e-9));
  CHECK_THROWS_AS(brownian_characteristic(k3, origin, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("brownian grid characteristic: constants and the telescoping identity") {
  Symbol c = constant_symbol(2, 1.5);
  CHECK(brownian_chain_characteristic(c, {0.0, 0.0}, 1.0, 10) == 1.5);
  CHECK(brownian_chain_characteristic(c, {0.0, 0.0}, 0.91, 10) ==
        doctest::Approx(1.5).epsilon(1e-15));
  CHECK(brownian_chain_characteristic(c, {0.0, 0.0}, 0.9, 10) ==
        doctest::Approx(1.35).epsilon(1e-15));

  // matched smoothed symbol: the slab sum telescopes to the plain
  // characteristic at the rounded horizon
  Measure k3 = nested_circles_measure(3);
  const Vec origin{0.0, 0.0};
  for (std::size_t n : {4, 16}) {
    Symbol f = smoothed_symbol(k3, n, 1e-10);
    const double via_sum = brownian_chain_characteristic(f, origin, 0.5, n);
    const double direct = brownian_characteristic(k3, origin, 0.0, 0.5);
    CHECK(via_sum == doctest::Approx(direct).epsilon(1e-8));
  }

  Symbol bump = gaussian_bump_symbol(2, 1.0, 1.0, {0.0, 0.0});
  CHECK_THROWS_AS(brownian_chain_characteristic(bump, origin, 1.0, 4),
                  std::invalid_argument);
}

TEST_CASE("sampled matched functional agrees with the grid expectation") {
  // for a Brownian chain the grid skeleton has the exact Brownian law, so
  // the sampled mean must sit on the slab-sum expectation up to noise
  Measure k3 = nested_circles_measure(3);
  const std::size_t n = 32;
  Symbol f = smoothed_symbol(k3, n, 1e-7);
  auto model = DiffusionModel::brownian(2);
  auto law = InnovationLaw::standard_gaussian();
  FunctionalSample s =
      sample_broken_line(model, law, {0.0, 0.0}, f, 0.0, 1.0, n, 3000, 2024);
  REQUIRE(s.values.size() == 3000);
  SampleSummary sum = summarize(s.values);
  const double target = brownian_characteristic(k3, {0.0, 0.0}, 0.0, 1.0);
  CHECK(std::abs(sum.mean - target) < 4.0 * sum.std_error);
  CHECK(sum.std_error < 0.05);
}

TEST_CASE("regularity profile decreases with the horizon and stays positive") {
  Measure c = Measure::circle({0.0, 0.0}, 0.1, 1.0);
  auto rows = regularity_profile(c, {0.0, 0.0}, {0.5, 0.25, 0.01});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].value == doctest::Approx(0.64265645196300454).epsilon(1e-10));
  CHECK(rows[1].value == doctest::Approx(0.53391832634259517).epsilon(1e-10));
  CHECK(rows[1].value < rows[0].value);
  CHECK(rows[2].value < rows[1].value);
  CHECK(rows[2].value > 0.0);
}
