#include <doctest.h>

#include <random>
#include <stdexcept>

#include "scs/profiles.hpp"

using namespace scs::profiles;

namespace {

ResultsTable table(Matrix metric, std::vector<std::vector<bool>> solved) {
  ResultsTable t;
  for (std::size_t p = 0; p < metric.size(); ++p) t.problems.push_back("p" + std::to_string(p));
  for (std::size_t s = 0; s < metric.front().size(); ++s) t.solvers.push_back("s" + std::to_string(s));
  t.metric = std::move(metric);
  t.solved = std::move(solved);
  return t;
}

ResultsTable all_solved(Matrix metric) {
  std::vector<std::vector<bool>> solved(metric.size(), std::vector<bool>(metric.front().size(), true));
  return table(std::move(metric), std::move(solved));
}

}  // namespace

TEST_CASE("ratios on a two by two table") {
  const auto r = performance_ratios(all_solved({{1, 2}, {3, 1}}));
  CHECK(r.r == Matrix{{1, 2}, {3, 1}});
  CHECK(r.r_max == 3.0);
  const std::vector<double> one{1.0};
  CHECK(profile_curve(r.r, 0, one)[0] == 0.5);
  CHECK(profile_curve(r.r, 1, one)[0] == 0.5);
}

TEST_CASE("single solver ratios are all one") {
  const auto r = performance_ratios(all_solved({{4}, {0.5}, {7}}));
  CHECK(r.r == Matrix{{1}, {1}, {1}});
  CHECK(r.r_max == 1.0);
}

TEST_CASE("failures are placed at r_M") {
  const auto r = performance_ratios(table({{1, 5}}, {{true, false}}));
  CHECK(r.r[0][0] == 1.0);
  CHECK(r.r[0][1] == r.r_max);
  CHECK(r.r_max > 1.0);

  const auto m = performance_ratios(table({{1, 2}, {3, 1}, {1, 1}}, {{true, true}, {true, true}, {true, false}}));
  CHECK(m.r_max == doctest::Approx(3.0 * 1.05).epsilon(1e-15));
  CHECK(m.r[2][1] == m.r_max);
}

TEST_CASE("a row where every solver failed") {
  const auto r = performance_ratios(table({{1, 2}, {3, 4}}, {{true, true}, {false, false}}));
  CHECK(r.r[1][0] == r.r_max);
  CHECK(r.r[1][1] == r.r_max);
}

TEST_CASE("profile curve examples") {
  const Matrix r{{1}, {3}};
  const std::vector<double> tau{1.0};
  CHECK(profile_curve(r, 0, tau)[0] == 0.5);

  const auto ratios = performance_ratios(all_solved({{1, 2}, {3, 1}, {2, 2}}));
  const std::vector<double> top{ratios.r_max};
  CHECK(profile_curve(ratios.r, 0, top)[0] == 1.0);
  CHECK(profile_curve(ratios.r, 1, top)[0] == 1.0);

  const auto failed = performance_ratios(table({{1, 9}, {2, 9}}, {{true, false}, {true, false}}));
  const auto grid = tau_grid(failed.r_max, 64);
  const auto rho = profile_curve(failed.r, 1, grid);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) CHECK(rho[i] == 0.0);
}

TEST_CASE("negative metric is rejected") {
  CHECK_THROWS_AS(performance_ratios(all_solved({{1, -2}})), std::invalid_argument);
  ResultsTable bad = all_solved({{1, 2}});
  bad.solvers.pop_back();
  CHECK_THROWS_AS(performance_ratios(bad), std::invalid_argument);
}

TEST_CASE("tau grid") {
  const auto g = tau_grid(8.0, 512);
  CHECK(g.size() == 512);
  CHECK(g.front() == 1.0);
  CHECK(g.back() == 8.0);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
  CHECK(tau_grid(1.0, 4) == std::vector<double>{1, 1, 1, 1});
  CHECK_THROWS_AS(tau_grid(0.5), std::invalid_argument);
}

TEST_CASE("random tables: monotone curves, best-solver coverage, scale invariance") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.01, 10.0);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  std::bernoulli_distribution fails(0.2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t np = 2 + trial % 7;
    const std::size_t ns = 2 + trial % 4;
    Matrix metric(np, std::vector<double>(ns));
    std::vector<std::vector<bool>> solved(np, std::vector<bool>(ns, true));
    for (std::size_t p = 0; p < np; ++p) {
      for (std::size_t s = 0; s < ns; ++s) {
        metric[p][s] = u(rng);
        solved[p][s] = s == 0 || !fails(rng);
      }
    }
    const ResultsTable t = table(metric, solved);
    const Profile prof = make_profile(t);
    for (const auto& rho : prof.rho) {
      for (std::size_t i = 0; i < rho.size(); ++i) {
        CHECK(rho[i] >= 0.0);
        CHECK(rho[i] <= 1.0);
        if (i > 0) CHECK(rho[i] >= rho[i - 1]);
      }
    }

    const Ratios r = performance_ratios(t);
    std::size_t best_count = 0;
    for (std::size_t p = 0; p < np; ++p) {
      for (std::size_t s = 0; s < ns; ++s) best_count += r.r[p][s] == 1.0 ? 1 : 0;
    }
    CHECK(best_count >= np);

    ResultsTable scaled_t = t;
    for (auto& row : scaled_t.metric) {
      const double c = scale(rng);
      for (double& v : row) v *= c;
    }
    const Ratios rs = performance_ratios(scaled_t);
    CHECK(rs.r_max == doctest::Approx(r.r_max).epsilon(1e-12));
    for (std::size_t p = 0; p < np; ++p) {
      for (std::size_t s = 0; s < ns; ++s) CHECK(rs.r[p][s] == doctest::Approx(r.r[p][s]).epsilon(1e-12));
    }
  }
}

TEST_CASE("metrics from results: ten percent rule") {
  const std::vector<RunSummary> runs{{"ct1", "A", 1.0, 0, 10, 0.1}, {"ct1", "B", 1.05, 0, 20, 0.2},
                                     {"ct2", "A", 2.0, 0, 10, 0.1}, {"ct2", "B", 2.5, 0, 5, 0.05}};
  const auto tables = metrics_from_results(runs, SolvedRule::TenPercent);
  REQUIRE(tables.count("f_min") == 1);
  REQUIRE(tables.count("evals") == 1);
  REQUIRE(tables.count("cpu") == 1);
  const auto& f = tables.at("f_min");
  CHECK(f.solved[0][0]);
  CHECK(f.solved[0][1]);
  CHECK(f.solved[1][0]);
  CHECK_FALSE(f.solved[1][1]);
  CHECK(tables.at("evals").metric[1][1] == 5.0);
}

TEST_CASE("metrics from results: error threshold and zero floor") {
  const std::vector<RunSummary> runs{{"P1", "A", 0.0, 0.0, 10, 0.1}, {"P1", "B", 0.2, 0.2, 10, 0.1}};
  const auto tables = metrics_from_results(runs, SolvedRule::Threshold);
  const auto& e = tables.at("error");
  CHECK(e.solved[0][0]);
  CHECK_FALSE(e.solved[0][1]);
  CHECK(e.metric[0][0] == kMetricFloor);
  CHECK(e.metric[0][1] == 0.2);
}

TEST_CASE("metrics from results: incomplete or duplicated grid") {
  const std::vector<RunSummary> missing{{"P1", "A", 0, 0, 1, 1}, {"P1", "B", 0, 0, 1, 1}, {"P2", "A", 0, 0, 1, 1}};
  CHECK_THROWS_AS(metrics_from_results(missing, SolvedRule::Threshold), std::invalid_argument);
  const std::vector<RunSummary> dup{{"P1", "A", 0, 0, 1, 1}, {"P1", "A", 0, 0, 1, 1}};
  CHECK_THROWS_AS(metrics_from_results(dup, SolvedRule::Threshold), std::invalid_argument);
  CHECK_THROWS_AS(metrics_from_results(std::vector<RunSummary>{}, SolvedRule::Threshold), std::invalid_argument);
}
