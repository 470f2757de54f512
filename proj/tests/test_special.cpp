#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ltmc/quadrature.hpp"
#include "ltmc/special.hpp"

using ltmc::exp_int_e1;
using ltmc::normal_quantile;
using ltmc::upper_gamma;

// Reference values computed independently at 50-digit precision (mpmath).

TEST_CASE("exp_int_e1 matches high-precision references") {
  CHECK(exp_int_e1(0.01) == doctest::Approx(4.0379295765381138).epsilon(1e-14));
  CHECK(exp_int_e1(0.5) == doctest::Approx(0.55977359477616081).epsilon(1e-14));
  CHECK(exp_int_e1(1.0) == doctest::Approx(0.21938393439552027).epsilon(1e-14));
  CHECK(exp_int_e1(2.0) == doctest::Approx(0.048900510708061120).epsilon(1e-14));
  CHECK(exp_int_e1(5.0) == doctest::Approx(0.0011482955912753258).epsilon(1e-13));
  CHECK(exp_int_e1(1e-6) == doctest::Approx(13.238295893062491).epsilon(1e-14));
  CHECK(exp_int_e1(50.0) == doctest::Approx(3.7832640295504590e-24).epsilon(1e-12));
  CHECK(exp_int_e1(800.0) == 0.0);  // below denormal range
  CHECK_THROWS_AS(exp_int_e1(0.0), std::domain_error);
  CHECK_THROWS_AS(exp_int_e1(-1.0), std::domain_error);
}

TEST_CASE("exp_int_e1 agrees with direct tail quadrature") {
  for (double x : {0.01, 0.3, 1.0, 2.0, 5.0, 20.0}) {
    auto r = ltmc::quad::integrate_to_inf(
        [](double u) { return std::exp(-u) / u; }, x, {1e-12, 0.0, 40000});
    REQUIRE(r.converged);
    CHECK(exp_int_e1(x) == doctest::Approx(r.value).epsilon(1e-10));
  }
}

TEST_CASE("upper_gamma half-integer ladder") {
  // s = 0 is the exponential integral
  CHECK(upper_gamma(0.0, 1.0) == doctest::Approx(exp_int_e1(1.0)).epsilon(1e-15));
  // s = 1: e^-x exactly; s = 2: (x+1) e^-x
  for (double x : {0.1, 1.0, 3.0}) {
    CHECK(upper_gamma(1.0, x) == doctest::Approx(std::exp(-x)).epsilon(1e-14));
    CHECK(upper_gamma(2.0, x) ==
          doctest::Approx((x + 1.0) * std::exp(-x)).epsilon(1e-14));
  }
  // s = 1/2 against direct quadrature of u^{-1/2} e^-u
  for (double x : {0.05, 0.5, 2.0}) {
    auto r = ltmc::quad::integrate_to_inf(
        [](double u) { return std::exp(-u) / std::sqrt(u); }, x,
        {1e-12, 0.0, 40000});
    REQUIRE(r.converged);
    CHECK(upper_gamma(0.5, x) == doctest::Approx(r.value).epsilon(1e-10));
  }
  // s = 3/2 against quadrature
  {
    auto r = ltmc::quad::integrate_to_inf(
        [](double u) { return std::sqrt(u) * std::exp(-u); }, 0.7,
        {1e-12, 0.0, 40000});
    REQUIRE(r.converged);
    CHECK(upper_gamma(1.5, 0.7) == doctest::Approx(r.value).epsilon(1e-10));
  }
  CHECK_THROWS_AS(upper_gamma(0.3, 1.0), std::domain_error);
  CHECK_THROWS_AS(upper_gamma(1.0, -2.0), std::domain_error);
}

TEST_CASE("normal_quantile matches references and inverts the CDF") {
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(normal_quantile(0.975) ==
        doctest::Approx(1.9599639845400542).epsilon(1e-14));
  CHECK(normal_quantile(0.001) ==
        doctest::Approx(-3.0902323061678136).epsilon(1e-14));
  // far tail probed from below: 1e-7 is exactly representable to 1 ulp,
  // while 1 - 0.9999999 would lose eight digits before the algorithm runs
  CHECK(normal_quantile(1e-7) ==
        doctest::Approx(-5.1993375821928169).epsilon(1e-13));
  CHECK(normal_quantile(0.3) ==
        doctest::Approx(-0.52440051270804078).epsilon(1e-14));
  // round trip through the CDF expressed with erfc
  for (double p = 0.0005; p < 1.0; p += 0.0417) {
    const double q = normal_quantile(p);
    const double back = 0.5 * std::erfc(-q / std::sqrt(2.0));
    CHECK(back == doctest::Approx(p).epsilon(1e-12));
  }
  CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
}
