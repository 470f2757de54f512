#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "ltmc/errors.hpp"
#include "ltmc/feynman_kac.hpp"
#include "ltmc/parallel.hpp"

using namespace ltmc;

namespace {

FeynmanKacQuery brownian_query_1d() {
  FeynmanKacQuery q;
  q.model = DiffusionModel::brownian(1);
  q.symbol = constant_symbol(1, 0.0);
  q.terminal = [](const Vec&) { return 1.0; };
  q.x0 = {0.0};
  return q;
}

}  // namespace

TEST_CASE("constant killing rate gives the exponential weight exactly") {
  FeynmanKacQuery q;
  q.model = DiffusionModel::brownian(2);
  q.symbol = constant_symbol(2, 1.0);
  q.terminal = [](const Vec&) { return 1.0; };
  q.x0 = {0.0, 0.0};
  q.t = 1.0;
  q.n = 10;
  q.paths = 64;
  q.seed = 5;
  FeynmanKacEstimate e = feynman_kac_estimate(q);
  CHECK(std::abs(e.estimate - std::exp(-1.0)) < 1e-14);
  CHECK(e.std_error < 1e-14);
  CHECK(e.paths_used == 64);
  CHECK(e.diverged == 0);
}

TEST_CASE("zero symbol and unit terminal is exactly one with zero spread") {
  FeynmanKacQuery q = brownian_query_1d();
  q.t = 1.0;
  q.n = 8;
  q.paths = 100;
  FeynmanKacEstimate e = feynman_kac_estimate(q);
  CHECK(e.estimate == 1.0);
  CHECK(e.std_error == 0.0);
}

TEST_CASE("estimates are bitwise reproducible across thread counts") {
  FeynmanKacQuery q = brownian_query_1d();
  q.symbol = gaussian_bump_symbol(1, 1.0, 1.0, {0.0});
  q.terminal = [](const Vec& x) { return std::exp(-x[0] * x[0]); };
  q.t = 0.5;
  q.n = 32;
  q.paths = 2000;
  q.seed = 12;
  const int before = max_threads();
  set_max_threads(1);
  FeynmanKacEstimate serial = feynman_kac_estimate(q);
  set_max_threads(7);
  FeynmanKacEstimate parallel = feynman_kac_estimate(q);
  set_max_threads(before);
  CHECK(serial.estimate == parallel.estimate);
  CHECK(serial.std_error == parallel.std_error);
  CHECK(serial.paths_used == parallel.paths_used);
}

TEST_CASE("antithetic pairing cancels a linear terminal exactly") {
  FeynmanKacQuery q = brownian_query_1d();
  // terminal x + 5 stays positive over the horizon's plausible range but is
  // linear, so mirrored pairs average to the start point exactly
  q.x0 = {0.25};
  q.terminal = [](const Vec& x) { return x[0] + 5.0; };
  q.t = 1.0;
  q.n = 16;
  q.paths = 500;  // odd count rejected when pairing
  q.antithetic = true;
  CHECK_THROWS_AS(
      [&] {
        FeynmanKacQuery bad = q;
        bad.paths = 501;
        return feynman_kac_estimate(bad);
      }(),
      std::invalid_argument);
  FeynmanKacEstimate e = feynman_kac_estimate(q);
  CHECK(e.estimate == doctest::Approx(5.25).epsilon(1e-15));
  CHECK(e.std_error < 1e-15);
  CHECK(e.paths_used == 250);
}

TEST_CASE("antithetic pairing reduces spread for a monotone payoff") {
  FeynmanKacQuery q = brownian_query_1d();
  q.terminal = [](const Vec& x) { return 1.0 / (1.0 + std::exp(-2.0 * x[0])); };
  q.t = 1.0;
  q.n = 16;
  q.paths = 4000;
  q.seed = 9;
  FeynmanKacEstimate plain = feynman_kac_estimate(q);
  q.antithetic = true;
  FeynmanKacEstimate paired = feynman_kac_estimate(q);
  CHECK(paired.std_error < plain.std_error);
  CHECK(std::abs(plain.estimate - paired.estimate) <
        4.0 * std::sqrt(plain.std_error * plain.std_error +
                        paired.std_error * paired.std_error));
}

TEST_CASE("killed transition estimates reduce to indicator terminals") {
  FeynmanKacQuery q = brownian_query_1d();
  q.t = 1.0;
  q.n = 16;
  q.paths = 3000;
  q.seed = 31;
  FeynmanKacEstimate everywhere =
      killed_transition_estimate(q, [](const Vec&) { return true; });
  FeynmanKacEstimate unit = feynman_kac_estimate(q);
  CHECK(everywhere.estimate == unit.estimate);
  CHECK(everywhere.std_error == unit.std_error);

  FeynmanKacEstimate nowhere =
      killed_transition_estimate(q, [](const Vec&) { return false; });
  CHECK(nowhere.estimate == 0.0);
  CHECK(nowhere.std_error == 0.0);

  // symmetric chain: the positive half-line has probability one half
  FeynmanKacEstimate half =
      killed_transition_estimate(q, [](const Vec& x) { return x[0] > 0.0; });
  CHECK(std::abs(half.estimate - 0.5) < 4.0 * half.std_error + 1e-12);
}

TEST_CASE("divergent dynamics are reported, not averaged over") {
  FeynmanKacQuery q;
  q.model.dim = 1;
  q.model.drift = [](const Vec& x) { return Vec{std::exp(x[0] * x[0])}; };
  q.model.diffusion = [](const Vec&) { Mat b(1); b(0, 0) = 1.0; return b; };
  q.symbol = constant_symbol(1, 0.0);
  q.terminal = [](const Vec&) { return 1.0; };
  q.x0 = {30.0};
  q.t = 1.0;
  q.n = 4;
  q.paths = 16;
  CHECK_THROWS_AS(feynman_kac_estimate(q), invalid_run_error);
}

TEST_CASE("convergence study tracks the grid refinement deterministically") {
  // a constant symbol over a fractional horizon makes the estimate an exact
  // function of n: exp(-c * ceil(n t) / n), monotonically approaching the
  // continuum value from above in this setup
  FeynmanKacQuery q = brownian_query_1d();
  q.symbol = constant_symbol(1, 0.8);
  q.t = 0.45;
  q.paths = 10;
  auto rows = convergence_study(q, {8, 32, 128}, 3);
  REQUIRE(rows.size() == 3);
  const double limit = std::exp(-0.8 * 0.45);
  double prev_gap = std::numeric_limits<double>::infinity();
  for (const auto& row : rows) {
    CHECK(row.spread == 0.0);  // deterministic estimate for every replicate
    const double expected =
        std::exp(-0.8 * std::ceil(static_cast<double>(row.n) * 0.45) /
                 static_cast<double>(row.n));
    CHECK(row.mean == doctest::Approx(expected).epsilon(1e-14));
    const double gap = std::abs(row.mean - limit);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }

  // replicate seeds differ: a noisy estimate has positive spread
  q.symbol = gaussian_bump_symbol(1, 1.0, 1.0, {0.0});
  q.paths = 200;
  auto noisy = convergence_study(q, {8}, 4);
  CHECK(noisy[0].spread > 0.0);
  REQUIRE(noisy[0].estimates.size() == 4);
  CHECK(noisy[0].estimates[0] != noisy[0].estimates[1]);
}
