#include <doctest.h>

#include "../common/appendix_checks.hpp"

using namespace scs;

TEST_CASE("quadratic model error is bounded by L/2 ||p||^2") {
  CHECK(checks::lipschitz_model_violations(1, 1000) == 0);
}

TEST_CASE("accepted nonmonotone steps respect the lower bound") {
  const auto r = checks::step_lower_bound(2, 40);
  CHECK(r.steps > 1000);
  CHECK(r.violations == 0);
}

TEST_CASE("longer memory never shrinks the accepted step") {
  CHECK(checks::memory_dominance_violations(3, 500) == 0);
}

TEST_CASE("partial sums of nonmonotone decrease stay bounded on quadratics") {
  const auto r = checks::partial_sums_bounded_quadratic(404, 40, 300);
  CHECK(r.runs == 40);
  CHECK(r.violations == 0);
  MESSAGE("largest partial sum / bound = " << r.worst_ratio);
}

TEST_CASE("benchmark runs exceed the partial sum bound only inside cycles") {
  const auto r = checks::partial_sums_bounded(300);
  CHECK(r.runs == 40);
  CHECK(r.violations == r.cycling_violations);
  for (const auto& f : r.failed) MESSAGE("over bound: " << f);
}

TEST_CASE("cycle period detection") {
  CHECK(checks::cycle_period({5, 1, 2, 3, 1, 2, 3, 1, 2, 3, 1, 2, 3, 1, 2, 3}, 8) == 3);
  CHECK(checks::cycle_period({4, 3, 2, 1, 0, -1, -2, -3, -4, -5}, 8) == 0);
  CHECK(checks::cycle_period({1, 1, 1, 1, 1}, 8) == 1);
  CHECK(checks::cycle_period({0, 2, 7, 2 + 1e-12, 7, 2, 7 - 1e-12, 2, 7, 2, 7}, 8) == 2);
}
