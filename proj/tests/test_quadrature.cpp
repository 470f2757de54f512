#include <doctest.h>

#include <cmath>

#include "ltmc/errors.hpp"
#include "ltmc/quadrature.hpp"

namespace q = ltmc::quad;

TEST_CASE("smooth integrands converge fast") {
  auto r = q::integrate([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  r = q::integrate([](double x) { return std::sin(x); }, 0.0, M_PI);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));

  r = q::integrate([](double) { return 1.0; }, 2.0, 2.0);
  CHECK(r.value == 0.0);
}

TEST_CASE("integrable endpoint singularities") {
  auto r = q::integrate([](double x) { return -std::log(x); }, 0.0, 1.0,
                        {1e-11, 0.0, 40000});
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));

  r = q::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0,
                   {1e-11, 0.0, 40000});
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("interior kinks handled via knots") {
  auto f = [](double x) { return std::fabs(x - 0.3); };
  auto r = q::integrate(f, {0.0, 0.3, 1.0});
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(0.29).epsilon(1e-13));
}

TEST_CASE("semi-infinite ranges") {
  auto r = q::integrate_to_inf([](double u) { return std::exp(-u); }, 0.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-11));

  r = q::integrate_to_inf([](double u) { return 1.0 / (u * u); }, 1.0,
                          {1e-11, 0.0, 40000});
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));

  r = q::integrate_to_inf([](double u) { return std::exp(-0.5 * u * u); }, 0.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(std::sqrt(M_PI / 2.0)).epsilon(1e-11));
}

TEST_CASE("failure reporting") {
  // Far too small a panel budget for a singular integrand.
  q::Options tight{1e-14, 0.0, 3, false};
  auto r = q::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0,
                        tight);
  CHECK_FALSE(r.converged);

  tight.throw_on_failure = true;
  CHECK_THROWS_AS(q::integrate([](double x) { return 1.0 / std::sqrt(x); },
                               0.0, 1.0, tight),
                  ltmc::quadrature_error);
}
