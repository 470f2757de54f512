// Release gate binary: one test case per numbered criterion so the suite can
// run criteria selectively (--test-case=*criterion_04*) and report one
// PASS/FAIL line each. Artifacts land under acceptance_artifacts/ in the
// working directory.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "ltmc/acceptance.hpp"

namespace {

void run_one(int id) {
  const ltmc::CriterionResult r =
      ltmc::run_criterion(id, "acceptance_artifacts");
  for (const ltmc::CriterionCheck& c : r.checks)
    CHECK_MESSAGE(c.pass, c.label, ": ", c.detail);
  std::printf("criterion %02d [%s] %s\n", r.id, r.pass ? "PASS" : "FAIL",
              r.name.c_str());
  std::fflush(stdout);
  CHECK(r.pass);
}

}  // namespace

TEST_CASE("acceptance criterion_01 layer potential interior constant") { run_one(1); }
TEST_CASE("acceptance criterion_02 heat kernel smoothing closed forms") { run_one(2); }
TEST_CASE("acceptance criterion_03 deterministic exponential weight") { run_one(3); }
TEST_CASE("acceptance criterion_04 finite difference cross-check") { run_one(4); }
TEST_CASE("acceptance criterion_05 characteristics oracle chain") { run_one(5); }
TEST_CASE("acceptance criterion_06 measure admissibility diagnostics") { run_one(6); }
TEST_CASE("acceptance criterion_07 kernel majorant suite") { run_one(7); }
TEST_CASE("acceptance criterion_08 coupling second-moment envelope") { run_one(8); }
TEST_CASE("acceptance criterion_09 broken line law stability") { run_one(9); }
TEST_CASE("acceptance criterion_10 thread count reproducibility") { run_one(10); }
