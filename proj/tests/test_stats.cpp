#include <doctest.h>

#include <cmath>

#include "ltmc/stats.hpp"

using ltmc::fit_line;
using ltmc::ks_critical;
using ltmc::ks_statistic;
using ltmc::summarize;

TEST_CASE("summarize basics") {
  auto s = summarize({1.0, 2.0, 3.0, 4.0});
  CHECK(s.count == 4);
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.variance == doctest::Approx(5.0 / 3.0));
  CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 12.0)));

  auto empty = summarize({});
  CHECK(empty.count == 0);
  CHECK(empty.mean == 0.0);
}

TEST_CASE("ks statistic on hand cases") {
  CHECK(ks_statistic({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}) == 0.0);
  CHECK(ks_statistic({1.0, 3.0}, {2.0, 4.0}) == doctest::Approx(0.5));
  // fully separated samples
  CHECK(ks_statistic({0.0, 0.1}, {5.0, 6.0}) == doctest::Approx(1.0));
  CHECK_THROWS(ks_statistic({}, {1.0}));
}

TEST_CASE("ks critical value, 1% two-sample") {
  // c(0.01) = sqrt(-ln(0.005)/2) = 1.6276236307187293
  CHECK(ks_critical(10000, 10000, 0.01) ==
        doctest::Approx(0.023018074130013650).epsilon(1e-12));
}

TEST_CASE("fit_line recovers an exact line") {
  auto f = fit_line({0.0, 1.0, 2.0, 5.0}, {1.0, 3.0, 5.0, 11.0});
  CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS(fit_line({1.0}, {2.0}));
  CHECK_THROWS(fit_line({1.0, 1.0}, {2.0, 3.0}));
}
