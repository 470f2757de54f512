#include <doctest.h>

#include <cmath>
#include <vector>

#include "ltmc/rng.hpp"

using ltmc::RngStream;

TEST_CASE("identical triples give bitwise-identical draws") {
  RngStream a(42, 7, 13), b(42, 7, 13);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  RngStream c(42, 7, 13), d(42, 7, 13);
  for (int i = 0; i < 50; ++i) {
    CHECK(c.gaussian() == d.gaussian());
  }
}

TEST_CASE("distinct triples decorrelate") {
  RngStream base(42, 7, 13);
  RngStream path(42, 8, 13);
  RngStream step(42, 7, 14);
  RngStream seed(43, 7, 13);
  const auto v = base.next_u64();
  CHECK(v != path.next_u64());
  CHECK(v != step.next_u64());
  CHECK(v != seed.next_u64());
}

TEST_CASE("uniforms stay strictly inside (0,1)") {
  RngStream r(1, 0, 0);
  for (int i = 0; i < 20000; ++i) {
    const double u = r.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("gaussian moments at statistical tolerance") {
  const std::size_t n = 200000;
  double sum = 0.0, sumsq = 0.0, sumcube_abs = 0.0;
  std::size_t below = 0;
  for (std::size_t p = 0; p < n; ++p) {
    RngStream r(2024, p, 0);
    const double g = r.gaussian();
    sum += g;
    sumsq += g * g;
    sumcube_abs += std::fabs(g * g * g);
    if (g < 0.0) ++below;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  // 4-sigma bands: sd(mean) = 1/sqrt(n), sd(var) ~ sqrt(2/n)
  CHECK(std::fabs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::fabs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
  // E|g|^3 = 2 sqrt(2/pi) = 1.5957691; generous band
  CHECK(sumcube_abs / n == doctest::Approx(1.5957691216057308).epsilon(0.02));
  CHECK(std::fabs(static_cast<double>(below) / n - 0.5) <
        4.0 * 0.5 / std::sqrt(static_cast<double>(n)));
}
