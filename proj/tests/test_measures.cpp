#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "ltmc/measures.hpp"
#include "ltmc/special.hpp"

using namespace ltmc;

TEST_CASE("weight function: capped log in the plane, power above") {
  CHECK(admissibility_weight(0.5, 2) == 1.0);  // -ln(0.5) < 1, capped
  CHECK(admissibility_weight(0.1, 2) == doctest::Approx(std::log(10.0)).epsilon(1e-15));
  CHECK(admissibility_weight(std::exp(-1.0), 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(admissibility_weight(0.5, 3) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(admissibility_weight(0.1, 4) == doctest::Approx(100.0).epsilon(1e-13));
  CHECK_THROWS_AS(admissibility_weight(0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(admissibility_weight(0.5, 1), std::invalid_argument);
}

TEST_CASE("construction invariants") {
  CHECK_THROWS_AS(Measure::circle({0.0, 0.0}, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Measure::circle({0.0}, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Measure::circle({0.0, 0.0}, 1.0, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(Measure::mixture({}), std::invalid_argument);
  CHECK_THROWS_AS(nested_circles_measure(0), std::invalid_argument);
  CHECK_THROWS_AS(nested_circles_measure(7), std::invalid_argument);
  Box bad{{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}};
  CHECK_THROWS_AS(Measure::density([](const Vec&) { return 1.0; }, bad, 10),
                  std::invalid_argument);
  Box neg{{0.0, 0.0}, {1.0, 1.0}};
  CHECK_THROWS_AS(Measure::density([](const Vec& y) { return y[0] - 10.0; }, neg, 10),
                  std::invalid_argument);
}

TEST_CASE("circle families have the expected masses and extents") {
  Measure k3 = nested_circles_measure(3);
  CHECK(k3.total_mass() == doctest::Approx(1.0748456790123457).epsilon(1e-15));
  CHECK(k3.layers().size() == 3);
  CHECK(k3.layers()[2].radius == std::ldexp(1.0, -9));
  Measure k5 = nested_circles_measure(5);
  CHECK(k5.total_mass() == doctest::Approx(1.0803519290123457).epsilon(1e-15));
  CHECK(k5.support_radius() == doctest::Approx(0.5).epsilon(1e-15));

  Measure m3 = marching_circles_measure(3);
  CHECK(m3.total_mass() == doctest::Approx(1.0 + 0.25 + 1.0 / 9.0).epsilon(1e-15));
  CHECK(m3.layers()[1].center[0] == 0.5);
  CHECK(m3.support_radius() == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("ball mass of a circle layer matches plane geometry") {
  Measure c = Measure::circle({0.0, 0.0}, 1.0, 1.0);
  // chord geometry: the arc within sqrt(2) of a point on the circle is half
  CHECK(ball_mass(c, {1.0, 0.0}, std::sqrt(2.0)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(ball_mass(c, {0.0, 0.0}, 1.0) == 1.0);
  CHECK(ball_mass(c, {0.0, 0.0}, 0.999) == 0.0);
  CHECK(ball_mass(c, {3.0, 0.0}, 1.0) == 0.0);
  // quarter arc: points within distance 2 sin(pi/8) of an on-circle point
  const double bound = 2.0 * std::sin(kPi / 8.0);
  CHECK(ball_mass(c, {1.0, 0.0}, bound) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("log potential of a circle layer: closed form against quadrature") {
  CircleLayer layer{{0.3, -0.2}, 0.25, 0.7};
  Measure mu = Measure::circle(layer.center, layer.radius, layer.weight);
  std::vector<Vec> probes{{0.3, -0.2}, {0.35, -0.15}, {0.3, 0.3}, {1.0, 1.0}};
  for (const Vec& x : probes) {
    const double direct =
        integrate(mu, [&](const Vec& y) { return -std::log(dist2(y, x)); }, 1e-12);
    CHECK(circle_log_potential(layer, x) == doctest::Approx(direct).epsilon(1e-9));
  }
  // interior points all see -ln(radius), by the mean value property
  CHECK(circle_log_potential(layer, {0.31, -0.19}) ==
        doctest::Approx(0.7 * std::log(4.0)).epsilon(1e-14));
}

TEST_CASE("kernel integration against a layer reproduces the log-sin identity") {
  // on the circle itself the full log integral collapses to -ln(radius)
  const double r = 0.01;
  Measure c = Measure::circle({0.0, 0.0}, r, 1.0);
  RadialKernel logk{[](double rho) { return -std::log(rho); }, 1e300, 0.0};
  const double on_circle = integrate_kernel(c, logk, {r, 0.0}, 1e300, 1e-11);
  CHECK(on_circle == doctest::Approx(-std::log(r)).epsilon(1e-9));
}

TEST_CASE("kernel integration truncates to the ball exactly") {
  Measure c = Measure::circle({0.0, 0.0}, 1.0, 1.0);
  RadialKernel one{[](double) { return 1.0; }, 1e300, 0.0};
  // truncated constant kernel is just the arc mass
  CHECK(integrate_kernel(c, one, {1.0, 0.0}, std::sqrt(2.0), 1e-11) ==
        doctest::Approx(0.5).epsilon(1e-12));
  // beyond the farthest point the truncation is inactive
  CHECK(integrate_kernel(c, one, {1.0, 0.0}, 2.0001, 1e-11) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("weighted potential at the common center uses the exact route") {
  Measure k3 = nested_circles_measure(3);
  const RadialKernel w = admissibility_weight_kernel(2);
  const Vec origin{0.0, 0.0};
  CHECK(integrate_kernel(k3, w, origin, 0.5, 1e-10) ==
        doctest::Approx(1.2503031485355358).epsilon(1e-13));
  CHECK(integrate_kernel(k3, w, origin, 0.25, 1e-10) ==
        doctest::Approx(0.25030314853553581).epsilon(1e-13));
  CHECK(integrate_kernel(k3, w, origin, 0.05, 1e-10) ==
        doctest::Approx(0.077016353395549479).epsilon(1e-13));
  CHECK(integrate_kernel(k3, w, origin, 0.001, 1e-10) == 0.0);
}

TEST_CASE("off-center weighted potential agrees with direct angular quadrature") {
  Measure c = Measure::circle({0.0, 0.0}, 0.5, 1.0);
  const RadialKernel w = admissibility_weight_kernel(2);
  const Vec x{0.25, 0.0};
  const double via_kernel = integrate_kernel(c, w, x, 1e300, 1e-11);
  const double direct = integrate(
      c, [&](const Vec& y) { return admissibility_weight(dist2(y, x), 2); }, 1e-11);
  CHECK(via_kernel == doctest::Approx(direct).epsilon(1e-8));
}

TEST_CASE("marching family keeps its per-center potential floor") {
  Measure m5 = marching_circles_measure(5);
  const RadialKernel w = admissibility_weight_kernel(2);
  for (int k = 1; k <= 5; ++k) {
    const Vec center{1.0 / k, 0.0};
    const double r_k = std::ldexp(1.0, -k * k);
    const double self_floor =
        std::pow(k, -2.0) * std::max(k * k * std::log(2.0), 1.0);
    const double value = integrate_kernel(m5, w, center, r_k, 1e-10);
    CHECK(value >= self_floor - 1e-12);
    CHECK(value >= 0.69);
  }
}

TEST_CASE("density components: lattice mass, ball mass, and kernel integrals") {
  Box box{{0.0, 0.0}, {1.0, 1.0}};
  Measure u = Measure::density([](const Vec&) { return 1.0; }, box, 200);
  CHECK(u.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(u.support_radius() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  // disc fully inside the box
  CHECK(ball_mass(u, {0.5, 0.5}, 0.3) == doctest::Approx(kPi * 0.09).epsilon(0.01));

  // kernel integral against the uniform density reduces to a radial integral
  const RadialKernel w = admissibility_weight_kernel(2);
  const double expected = kTwoPi * (0.25 * std::exp(-2.0) + 0.08);
  CHECK(integrate_kernel(u, w, {0.5, 0.5}, 0.4, 1e-10) ==
        doctest::Approx(expected).epsilon(1e-8));

  const double g_int = integrate(u, [](const Vec& y) { return y[0]; }, 1e-10);
  CHECK(g_int == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("integration of smooth functions against circle layers") {
  Measure c = Measure::circle({0.0, 0.0}, 0.5, 1.0);
  CHECK(integrate(c, [](const Vec& y) { return norm2_sq(y); }, 1e-12) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(integrate(c, [](const Vec& y) { return y[0] * y[0]; }, 1e-12) ==
        doctest::Approx(0.125).epsilon(1e-10));
  CHECK(std::abs(integrate(c, [](const Vec& y) { return y[1]; }, 1e-12)) < 1e-12);
}

TEST_CASE("probe grids cover the structural points of a measure") {
  Measure k3 = nested_circles_measure(3);
  ProbeGrid g = ProbeGrid::for_measure(k3);
  CHECK(g.points.size() >= 40);
  bool has_origin = false, has_on_circle = false;
  for (const Vec& p : g.points) {
    if (norm2(p) == 0.0) has_origin = true;
    if (std::abs(norm2(p) - 0.5) < 1e-15) has_on_circle = true;
  }
  CHECK(has_origin);
  CHECK(has_on_circle);
  // adding an existing point is a no-op
  const std::size_t before = g.points.size();
  g.add({0.0, 0.0});
  CHECK(g.points.size() == before);
}

TEST_CASE("supremum scan refines around the best grid point") {
  std::vector<Vec> pts{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  auto f = [](const Vec& x) {
    const double dx = x[0] - 0.08, dy = x[1] - 0.02;
    return 1.0 - dx * dx - dy * dy;
  };
  SupResult coarse = sup_over_points(pts, f, {});
  SupResult fine = sup_over_points(pts, f, {0.1, 0.02});
  CHECK(fine.value > coarse.value);
  CHECK(fine.value <= 1.0);
  CHECK(fine.value > 0.995);
}

TEST_CASE("small-ball potential table shrinks strictly for nested circles") {
  Measure k3 = nested_circles_measure(3);
  ProbeGrid grid = ProbeGrid::for_measure(k3);
  const std::vector<double> deltas{0.5, 0.25, 0.1, 0.05, 0.01, 0.001};
  auto rows = small_ball_potential_table(k3, grid, deltas);
  REQUIRE(rows.size() == deltas.size());
  // the shared-center column is a lower bound for the first row
  CHECK(rows[0].sup >= 1.2503031485355358 - 1e-10);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].sup < rows[i - 1].sup);
  CHECK(rows.back().sup < 0.25 * rows.front().sup);
  CHECK(rows.back().sup > 0.0);

  CHECK_THROWS_AS(small_ball_potential_table(k3, grid, {0.1, 0.2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(small_ball_potential_table(k3, grid, {}), std::invalid_argument);
}

TEST_CASE("uniform potential bound is finite and at least the center value") {
  Measure k3 = nested_circles_measure(3);
  SupResult s = uniform_potential_sup(k3, ProbeGrid::for_measure(k3));
  CHECK(std::isfinite(s.value));
  CHECK(s.value >= 1.2503031485355358 - 1e-10);
  CHECK(s.value < 3.0);
}

TEST_CASE("mass scaling fit recovers the dimension of a single circle") {
  Measure c = Measure::circle({0.0, 0.0}, 0.1, 1.0);
  ProbeGrid grid = ProbeGrid::for_measure(c);
  const std::vector<double> radii{0.05, 0.02, 0.01, 0.005, 0.002, 0.0005};
  MassScalingFit fit = mass_scaling_fit(c, grid, radii);
  REQUIRE(fit.valid);
  CHECK(fit.exponent == doctest::Approx(1.0).epsilon(0.05));
  CHECK(fit.prefactor == doctest::Approx(1.0 / (0.1 * kPi)).epsilon(0.2));

  CHECK_THROWS_AS(mass_scaling_fit(c, grid, {0.5, 0.4, 0.3, 0.2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(mass_scaling_fit(c, grid, {0.5, 0.001}), std::invalid_argument);
}

TEST_CASE("tail majorant matches its planar closed form") {
  // in the plane with alpha = 1 the tail integral is E1(y) + ln(1 + 1/y)
  CHECK(tail_majorant(1.0, 2, 1.0) == doctest::Approx(0.91253111495546558).epsilon(1e-9));
  CHECK(tail_majorant(1e-6, 2, 1.0) == doctest::Approx(27.053807451026265).epsilon(1e-9));
  CHECK(tail_majorant(50.0, 2, 1.0) == doctest::Approx(0.019802627296179713).epsilon(1e-9));
  CHECK(tail_majorant(1e4, 2, 1.0) == doctest::Approx(9.9995000333308335e-5).epsilon(1e-9));
  CHECK(tail_majorant(0.01, 2, 1.0) == doctest::Approx(8.6530500933793733).epsilon(1e-9));
  CHECK(tail_majorant(1.0, 3, 1.0) == doctest::Approx(1.0259070410635103).epsilon(1e-9));
  for (double y : {0.5, 3.0}) {
    const double identity = exp_int_e1(y) + std::log1p(1.0 / y);
    CHECK(tail_majorant(y, 2, 1.0) == doctest::Approx(identity).epsilon(1e-10));
  }
  CHECK_THROWS_AS(tail_majorant(0.0, 2, 1.0), std::invalid_argument);
}

TEST_CASE("truncated potential majorant: closed planar value and monotonicity") {
  const double expected = 2.0 * (0.048900510708061120 + std::log(1.5));
  CHECK(truncated_potential_majorant(1.0, 0.5, 2, 1.0, 1.0) ==
        doctest::Approx(expected).epsilon(1e-9));
  // shrinking the truncation radius shrinks the bound
  double prev = 1e300;
  for (double delta : {0.9, 0.5, 0.1, 0.01}) {
    const double v = truncated_potential_majorant(1.0, delta, 2, 1.0, 1.0);
    CHECK(v < prev);
    prev = v;
  }
}
