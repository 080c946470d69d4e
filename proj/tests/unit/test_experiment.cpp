#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "scs/ct/projector.hpp"
#include "scs/experiment/config.hpp"
#include "scs/experiment/csv.hpp"
#include "scs/experiment/runner.hpp"

using namespace scs;
using namespace scs::experiment;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("scs_experiment_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

CsvTable without_column(CsvTable t, const std::string& name) {
  const std::size_t c = t.column(name);
  t.header.erase(t.header.begin() + static_cast<long>(c));
  for (auto& row : t.rows) row.erase(row.begin() + static_cast<long>(c));
  return t;
}

ExperimentConfig tiny_ct_config() {
  auto config = default_config("desk");
  config.ct.side = 16;
  config.ct.n_det = 0;
  config.ct.low_dose_views = 12;
  config.ct.phantoms = {"shepplogan"};
  config.ct.modes = {"ld05", "sv30"};
  config.ct.max_iter = 10;
  return config;
}

}  // namespace

TEST_CASE("solver variant names") {
  const auto v = parse_variant("NMB2");
  CHECK(v.beta == BetaRule::PolakRibiere);
  CHECK(v.line_search == LineSearchKind::Nonmonotone);
  CHECK(parse_variant("WB0").line_search == LineSearchKind::Wolfe);
  CHECK(variant_name(BetaRule::FletcherReeves, LineSearchKind::Wolfe) == "WB3");
  CHECK_THROWS_AS(parse_variant("NMB4"), UsageError);
  CHECK_THROWS_AS(parse_variant("XB1"), UsageError);
}

TEST_CASE("default study sizes") {
  const auto desk = default_config("desk");
  CHECK(desk.bench.problems.size() * desk.bench.solvers.size() == 80);
  CHECK(desk.bench.max_iter == 1000);
  CHECK(desk.bench.memory == 7);
  CHECK(scenarios(desk).size() * desk.ct.solvers.size() == 16);
  CHECK(desk.ct.max_iter == 200);
  CHECK(desk.ct.box_projection);
  CHECK(desk.ct.grad_norm_stop == 1e-10);

  const auto full = default_config("full");
  CHECK(scenarios(full).size() == 45);
  CHECK(scenarios(full).size() * full.ct.solvers.size() == 180);
  CHECK_THROWS_AS(default_config("huge"), UsageError);
}

TEST_CASE("mu scaling follows the measurement count") {
  const auto full = default_config("full");
  for (const auto& s : scenarios(full)) CHECK(s.mu == doctest::Approx(s.mu_reference).epsilon(1e-15));

  const auto desk = default_config("desk");
  const auto specs = scenarios(desk);
  REQUIRE(specs.size() == 4);
  CHECK(specs[0].mode.id == "ld01");
  CHECK(specs[0].mode.views == 90);
  CHECK(specs[0].mu_reference == 25.0);
  CHECK(specs[0].mu == doctest::Approx(25.0 * (90.0 * 90.0) / (360.0 * 566.0) * (64.0 / 400.0)));
  CHECK(specs[1].mode.id == "sv30");
  CHECK(specs[1].mode.views == 30);
  CHECK(specs[1].mu == doctest::Approx(5.0 * (30.0 * 90.0) / (30.0 * 566.0) * (64.0 / 400.0)));
}

TEST_CASE("config file overlay and round trip") {
  const auto dir = fresh_dir("config");
  write_file(dir / "a.ini",
             "[run]\nseed = 9\n[bench]\nproblems = MAXQ, Brown2\nsolvers = NMB1\nmax_iter = 20\n"
             "[ct]\nside = 32\nmodes = sv60\nmu_sparse_view = 1, 2\n");
  auto config = default_config("desk");
  apply_config_file(config, dir / "a.ini");
  CHECK(config.seed == 9);
  CHECK(config.bench.problems == std::vector<std::string>{"MAXQ", "Brown2"});
  CHECK(config.bench.solvers.size() == 1);
  CHECK(config.bench.max_iter == 20);
  CHECK(config.ct.side == 32);
  CHECK(config.ct.mu_sparse_view == std::vector<double>{1, 2});
  validate(config);

  write_file(dir / "echo.ini", to_ini(config));
  auto again = default_config("desk");
  apply_config_file(again, dir / "echo.ini");
  CHECK(to_ini(again) == to_ini(config));
  fs::remove_all(dir);
}

TEST_CASE("config errors are usage errors") {
  const auto dir = fresh_dir("config_errors");
  auto config = default_config("desk");
  write_file(dir / "b.ini", "[bench]\nmaxiter = 3\n");
  CHECK_THROWS_AS(apply_config_file(config, dir / "b.ini"), UsageError);
  write_file(dir / "c.ini", "[nope]\na = 1\n");
  CHECK_THROWS_AS(apply_config_file(config, dir / "c.ini"), UsageError);
  write_file(dir / "d.ini", "[ct]\nside = big\n");
  CHECK_THROWS_AS(apply_config_file(config, dir / "d.ini"), UsageError);

  config = default_config("desk");
  config.bench.problems = {"Nope"};
  CHECK_THROWS_AS(validate(config), UsageError);
  config = default_config("desk");
  config.ct.side = 8;
  CHECK_THROWS_AS(validate(config), UsageError);
  config = default_config("desk");
  config.ct.solvers = {parse_variant("WB2")};
  CHECK_THROWS_AS(validate(config), UsageError);
  fs::remove_all(dir);
}

TEST_CASE("bench run: one problem, one solver") {
  const auto dir = fresh_dir("bench_one");
  auto config = default_config("desk");
  config.bench.problems = {"ChainedLQ"};
  config.bench.solvers = {parse_variant("NMB2")};
  const auto records = run_bench(config, {dir, 1, true});
  REQUIRE(records.size() == 1);
  CHECK(records[0].solved);

  const auto csv = read_csv(dir / "bench_results.csv");
  CHECK(csv.header == std::vector<std::string>{"problem", "solver", "f_min", "error", "evals", "cpu_seconds", "solved"});
  CHECK(csv.rows.size() == 1);
  CHECK(fs::exists(dir / "run_ChainedLQ_NMB2.json"));
  CHECK(fs::exists(dir / "effective_config.ini"));
  for (const char* metric : {"error", "evals", "cpu"}) {
    CHECK(fs::exists(dir / (std::string("profile_") + metric + ".csv")));
    CHECK(fs::exists(dir / (std::string("profile_") + metric + ".svg")));
  }
  fs::remove_all(dir);
}

TEST_CASE("bench run is reproducible apart from timing") {
  const auto a = fresh_dir("bench_a");
  const auto b = fresh_dir("bench_b");
  auto config = default_config("desk");
  config.bench.problems = {"MAXQ", "CrescentI", "Activefaces"};
  config.bench.solvers = {parse_variant("NMB0"), parse_variant("WB3")};
  config.bench.max_iter = 200;
  run_bench(config, {a, 1, true});
  run_bench(config, {b, 3, true});
  const auto ta = without_column(read_csv(a / "bench_results.csv"), "cpu_seconds");
  const auto tb = without_column(read_csv(b / "bench_results.csv"), "cpu_seconds");
  CHECK(ta.rows.size() == 6);
  CHECK(ta.rows == tb.rows);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("noise-free scenario uses the clean projection") {
  const auto config = tiny_ct_config();
  for (const auto& spec : scenarios(config)) {
    const auto inst = build_ct_instance(config.ct, spec);
    const auto clean = ct::forward_project(inst.truth, inst.problem.geometry);
    if (spec.mode.noise == 0.0) {
      CHECK(inst.problem.b.values == clean.values);
    } else {
      CHECK(inst.problem.b.values != clean.values);
    }
  }
}

TEST_CASE("ct run writes every artifact") {
  const auto dir = fresh_dir("ct");
  const auto config = tiny_ct_config();
  const auto records = run_ct(config, {dir, 2, true});
  CHECK(records.size() == 2 * 4);
  const auto csv = read_csv(dir / "ct_results.csv");
  CHECK(csv.rows.size() == 8);
  CHECK(csv.header[0] == "scenario");
  CHECK(fs::exists(dir / "ct_best_quality.csv"));
  CHECK(fs::exists(dir / "profile_f_min.csv"));
  CHECK(fs::exists(dir / ("recon_" + records[0].scenario + "_NMB0.pgm")));
  CHECK(fs::exists(dir / ("history_" + records[0].scenario + "_NMB0.csv")));
  for (const auto& r : records) {
    for (double v : r.reconstruction.pixels) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
  fs::remove_all(dir);
}

TEST_CASE("profiles from results files") {
  const auto dir = fresh_dir("profiles");
  std::string bench = "problem,solver,f_min,error,evals,cpu_seconds,solved\n";
  const char* solvers[] = {"NMB0", "NMB1", "NMB2", "NMB3", "WB0", "WB1", "WB2", "WB3"};
  for (const char* p : {"P1", "P2"}) {
    int i = 1;
    for (const char* s : solvers) {
      bench += std::string(p) + "," + s + ",0.5," + std::to_string(0.01 * i) + "," + std::to_string(10 * i) + ",0.1,1\n";
      ++i;
    }
  }
  write_file(dir / "bench_results.csv", bench);
  make_profiles({dir / "bench_results.csv"}, "error", std::nullopt, dir);
  auto prof = read_csv(dir / "profile_error.csv");
  CHECK(prof.header.size() == 9);
  CHECK(prof.header[0] == "log2_tau");
  CHECK(prof.rows.size() == 512);

  std::string ct = "scenario,solver,f_min,evals,psnr,ssim,cpu_seconds\n";
  for (const char* s : {"NMB0", "NMB1", "NMB2", "NMB3"}) ct += std::string("sc1,") + s + ",10,100,20,0.5,1\n";
  write_file(dir / "ct_results.csv", ct);
  make_profiles({dir / "ct_results.csv"}, "f_min", profiles::SolvedRule::TenPercent, dir);
  CHECK(read_csv(dir / "profile_f_min.csv").header.size() == 5);

  write_file(dir / "empty.csv", "");
  CHECK_THROWS_AS(make_profiles({dir / "empty.csv"}, "error", std::nullopt, dir), UsageError);
  write_file(dir / "header_only.csv", "problem,solver,f_min,error,evals,cpu_seconds,solved\n");
  CHECK_THROWS_AS(make_profiles({dir / "header_only.csv"}, "error", std::nullopt, dir), UsageError);
  write_file(dir / "bad.csv", "problem,solver,f_min,evals,cpu_seconds\nP1,A,1,2,3\n");
  try {
    make_profiles({dir / "bad.csv"}, "error", std::nullopt, dir);
    FAIL("expected a usage error");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("'error'") != std::string::npos);
  }
  CHECK_THROWS_AS(make_profiles({dir / "ct_results.csv"}, "error", std::nullopt, dir), UsageError);
  fs::remove_all(dir);
}

TEST_CASE("parallel_for runs every job once and propagates errors") {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                    if (i == 5) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}
