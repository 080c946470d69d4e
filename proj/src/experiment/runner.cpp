#include "scs/experiment/runner.hpp"

#include <atomic>
#include <cmath>
#include <ctime>
#include <exception>
#include <json.hpp>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "scs/benchmarks.hpp"
#include "scs/ct/image_io.hpp"
#include "scs/ct/metrics.hpp"
#include "scs/ct/phantom.hpp"
#include "scs/ct/projector.hpp"
#include "scs/experiment/csv.hpp"
#include "scs/experiment/svg.hpp"

namespace scs::experiment {

namespace fs = std::filesystem;

namespace {

double thread_cpu_seconds() {
  timespec ts{};
  clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return static_cast<double>(ts.tv_sec) + 1e-9 * static_cast<double>(ts.tv_nsec);
}

std::string format_count(std::size_t n) { return std::to_string(n); }

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
}

nlohmann::json solver_json(const ScsConfig& c) {
  nlohmann::json j;
  j["beta_rule"] = to_string(c.beta_rule);
  j["line_search"] = to_string(c.line_search);
  j["memory"] = c.memory;
  j["gamma"] = c.gamma;
  j["sigma"] = c.sigma;
  j["theta_min"] = c.theta_min;
  j["theta_max"] = c.theta_max;
  j["max_iter"] = c.max_iter;
  j["restart_tol"] = c.restart_tol;
  j["box_projection"] = c.box_projection;
  j["grad_norm_stop"] = c.grad_norm_stop;
  j["seed"] = c.seed;
  return j;
}

// JSON has no infinity or NaN; those become null.
nlohmann::json real_json(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

CsvTable history_table(const SolveResult& result) {
  CsvTable t;
  t.header = {"k", "f", "alpha", "theta", "beta", "restarted", "grad_norm", "evals", "line_search_failed"};
  for (const IterationRecord& r : result.history) {
    t.rows.push_back({std::to_string(r.k), format_real(r.f), format_real(r.alpha), format_real(r.theta),
                      format_real(r.beta), r.restarted ? "1" : "0", format_real(r.grad_norm), format_count(r.evals),
                      r.line_search_failed ? "1" : "0"});
  }
  return t;
}

std::map<std::string, profiles::ResultsTable> write_profiles(const fs::path& out_dir,
                                                             const std::vector<profiles::RunSummary>& runs,
                                                             profiles::SolvedRule rule) {
  auto tables = profiles::metrics_from_results(runs, rule);
  for (const auto& [metric, table] : tables) write_profile(out_dir, metric, profiles::make_profile(table));
  return tables;
}

double parse_cell(const std::string& cell, const std::string& column) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw UsageError("csv: column '" + column + "' has non-numeric value '" + cell + "'");
  }
}

}  // namespace

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& job) {
  const std::size_t threads = std::max<std::size_t>(1, std::min<std::size_t>(workers, count));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
}

std::vector<BenchRecord> run_bench(const ExperimentConfig& config, const RunOptions& options) {
  validate(config);
  const auto& b = config.bench;
  if (b.problems.empty() || b.solvers.empty()) throw UsageError("bench: need at least one problem and one solver");
  if (options.write_artifacts) {
    prepare_dir(options.out_dir);
    write_text(options.out_dir / "effective_config.ini", to_ini(config));
  }

  const std::size_t ns = b.solvers.size();
  std::vector<BenchRecord> records(b.problems.size() * ns);
  parallel_for(records.size(), options.workers, [&](std::size_t i) {
    const auto problem = bench::make_problem(b.problems[i / ns]);
    const SolverVariant& variant = b.solvers[i % ns];
    const ScsConfig solver = bench_solver_config(b, variant, config.seed);

    CountingOracle oracle(problem.objective);
    const double cpu0 = thread_cpu_seconds();
    const SolveResult result = solve(oracle, problem.x0, solver);
    const double cpu = thread_cpu_seconds() - cpu0;

    BenchRecord& r = records[i];
    r.problem = problem.name;
    r.solver = variant.name;
    r.f_min = result.f_min;
    r.f_star = problem.f_star;
    r.error = bench::error_measure(result.f_min, problem.f_star);
    r.evals = result.evals_to_best;
    r.total_evals = result.total_evals;
    r.cpu_seconds = cpu;
    r.solved = bench::is_solved(r.error);
    r.iterations = result.iterations;
    r.stop_reason = result.stop_reason;

    if (options.write_artifacts) {
      nlohmann::json j;
      j["problem"] = r.problem;
      j["n"] = problem.n;
      j["solver"] = r.solver;
      j["config"] = solver_json(solver);
      j["f_min"] = real_json(r.f_min);
      j["f_star"] = real_json(r.f_star);
      j["error"] = real_json(r.error);
      j["solved"] = r.solved;
      j["evals_to_best"] = r.evals;
      j["total_evals"] = r.total_evals;
      j["iterations"] = r.iterations;
      j["stop_reason"] = r.stop_reason;
      j["wall_seconds"] = result.wall_seconds;
      j["cpu_seconds"] = r.cpu_seconds;
      j["x_best"] = result.x_best;
      write_text(options.out_dir / ("run_" + r.problem + "_" + r.solver + ".json"), j.dump(2) + "\n");
    }
  });

  if (options.write_artifacts) {
    CsvTable csv;
    csv.header = {"problem", "solver", "f_min", "error", "evals", "cpu_seconds", "solved"};
    std::vector<profiles::RunSummary> runs;
    for (const BenchRecord& r : records) {
      csv.rows.push_back({r.problem, r.solver, format_real(r.f_min), format_real(r.error), format_count(r.evals),
                          format_real(r.cpu_seconds), r.solved ? "1" : "0"});
      runs.push_back({r.problem, r.solver, r.f_min, r.error, static_cast<double>(r.evals), r.cpu_seconds});
    }
    write_csv(options.out_dir / "bench_results.csv", csv);
    write_profiles(options.out_dir, runs, profiles::SolvedRule::Threshold);
  }
  return records;
}

CtInstance build_ct_instance(const CtConfig& ct, const ScenarioSpec& scenario) {
  const auto geometry = ct::Geometry::parallel(ct.side, scenario.mode.views, ct.n_det);
  CtInstance inst;
  inst.truth = ct::make_phantom(scenario.phantom, ct.side, scenario.seed);
  ct::Sinogram clean = ct::forward_project(inst.truth, geometry);
  inst.problem.geometry = geometry;
  inst.problem.b = scenario.mode.noise > 0.0 ? ct::add_gaussian_noise(clean, scenario.mode.noise, noise_seed(scenario))
                                             : std::move(clean);
  inst.problem.mu = scenario.mu;
  inst.problem.validate();
  return inst;
}

CtRecord run_ct_case(const CtConfig& ct, const CtInstance& instance, const ScenarioSpec& scenario,
                     const SolverVariant& variant, std::uint64_t seed) {
  const ScsConfig solver = ct_solver_config(ct, variant, seed);
  CountingOracle oracle(ct::ct_objective(instance.problem));
  const Vector x0(instance.problem.geometry.image_size(), 0.0);

  const double cpu0 = thread_cpu_seconds();
  SolveResult result = solve(oracle, x0, solver);
  const double cpu = thread_cpu_seconds() - cpu0;

  CtRecord r;
  r.scenario = scenario.id();
  r.solver = variant.name;
  r.f_min = result.f_min;
  r.evals = result.total_evals;
  r.cpu_seconds = cpu;
  r.reconstruction = ct::Image(instance.truth.side, result.x_best);
  r.psnr = ct::psnr(r.reconstruction, instance.truth);
  r.ssim = ct::ssim(r.reconstruction, instance.truth);
  r.result = std::move(result);
  return r;
}

std::vector<CtRecord> run_ct(const ExperimentConfig& config, const RunOptions& options) {
  validate(config);
  const auto& c = config.ct;
  const auto specs = scenarios(config);
  if (specs.empty() || c.solvers.empty()) throw UsageError("ct: need at least one scenario and one solver");
  if (options.write_artifacts) {
    prepare_dir(options.out_dir);
    write_text(options.out_dir / "effective_config.ini", to_ini(config));
  }

  std::vector<CtInstance> instances(specs.size());
  parallel_for(specs.size(), options.workers, [&](std::size_t i) {
    instances[i] = build_ct_instance(c, specs[i]);
    if (options.write_artifacts) {
      ct::write_pgm(options.out_dir / ("truth_" + specs[i].id() + ".pgm"), instances[i].truth);
    }
  });

  const std::size_t ns = c.solvers.size();
  std::vector<CtRecord> records(specs.size() * ns);
  parallel_for(records.size(), options.workers, [&](std::size_t i) {
    const std::size_t p = i / ns;
    records[i] = run_ct_case(c, instances[p], specs[p], c.solvers[i % ns], config.seed);
    if (options.write_artifacts) {
      const std::string stem = records[i].scenario + "_" + records[i].solver;
      ct::write_pgm(options.out_dir / ("recon_" + stem + ".pgm"), records[i].reconstruction);
      write_csv(options.out_dir / ("history_" + stem + ".csv"), history_table(records[i].result));
    }
  });

  if (options.write_artifacts) {
    CsvTable csv;
    csv.header = {"scenario", "solver", "f_min", "evals", "psnr", "ssim", "cpu_seconds"};
    std::vector<profiles::RunSummary> runs;
    for (const CtRecord& r : records) {
      csv.rows.push_back({r.scenario, r.solver, format_real(r.f_min), format_count(r.evals), format_real(r.psnr),
                          format_real(r.ssim), format_real(r.cpu_seconds)});
      runs.push_back({r.scenario, r.solver, r.f_min, 0.0, static_cast<double>(r.evals), r.cpu_seconds});
    }
    write_csv(options.out_dir / "ct_results.csv", csv);
    write_profiles(options.out_dir, runs, profiles::SolvedRule::TenPercent);

    CsvTable best;
    best.header = {"scenario", "best_psnr_solver", "psnr", "best_ssim_solver", "ssim"};
    for (std::size_t p = 0; p < specs.size(); ++p) {
      const CtRecord* by_psnr = &records[p * ns];
      const CtRecord* by_ssim = &records[p * ns];
      for (std::size_t s = 1; s < ns; ++s) {
        const CtRecord& r = records[p * ns + s];
        if (r.psnr > by_psnr->psnr) by_psnr = &r;
        if (r.ssim > by_ssim->ssim) by_ssim = &r;
      }
      best.rows.push_back({specs[p].id(), by_psnr->solver, format_real(by_psnr->psnr), by_ssim->solver,
                           format_real(by_ssim->ssim)});
    }
    write_csv(options.out_dir / "ct_best_quality.csv", best);
  }
  return records;
}

void write_profile(const fs::path& out_dir, const std::string& metric, const profiles::Profile& profile) {
  prepare_dir(out_dir);
  CsvTable csv;
  csv.header.push_back("log2_tau");
  for (const auto& s : profile.solvers) csv.header.push_back(s);
  for (std::size_t i = 0; i < profile.tau.size(); ++i) {
    std::vector<std::string> row{format_real(std::log2(profile.tau[i]))};
    for (std::size_t s = 0; s < profile.solvers.size(); ++s) row.push_back(format_real(profile.rho[s][i]));
    csv.rows.push_back(std::move(row));
  }
  write_csv(out_dir / ("profile_" + metric + ".csv"), csv);
  write_text(out_dir / ("profile_" + metric + ".svg"), profile_svg(profile, "Performance profile: " + metric));
}

std::vector<fs::path> make_profiles(const std::vector<fs::path>& csv_paths, const std::string& metric,
                                    std::optional<profiles::SolvedRule> rule, const fs::path& out_dir) {
  if (csv_paths.empty()) throw UsageError("profile: no results files given");

  std::optional<bool> is_bench;
  std::vector<profiles::RunSummary> runs;
  for (const auto& path : csv_paths) {
    const CsvTable t = read_csv(path);
    const bool bench_schema = t.has_column("problem");
    if (!bench_schema && !t.has_column("scenario")) {
      throw UsageError(path.string() + ": missing column 'problem' (bench) or 'scenario' (ct)");
    }
    if (is_bench && *is_bench != bench_schema) throw UsageError("profile: cannot mix bench and ct results");
    is_bench = bench_schema;

    const std::size_t c_id = t.column(bench_schema ? "problem" : "scenario");
    const std::size_t c_solver = t.column("solver");
    const std::size_t c_fmin = t.column("f_min");
    const std::size_t c_evals = t.column("evals");
    const std::optional<std::size_t> c_error =
        bench_schema ? std::optional<std::size_t>(t.column("error")) : std::nullopt;
    // cpu_seconds is required for bench files and optional for ct files.
    const std::optional<std::size_t> c_cpu = (bench_schema || t.has_column("cpu_seconds"))
                                                 ? std::optional<std::size_t>(t.column("cpu_seconds"))
                                                 : std::nullopt;

    for (const auto& row : t.rows) {
      profiles::RunSummary r;
      r.problem = row[c_id];
      r.solver = row[c_solver];
      r.f_min = parse_cell(row[c_fmin], "f_min");
      r.evals = parse_cell(row[c_evals], "evals");
      r.error = c_error ? parse_cell(row[*c_error], "error") : 0.0;
      r.cpu_seconds = c_cpu ? parse_cell(row[*c_cpu], "cpu_seconds") : 0.0;
      runs.push_back(std::move(r));
    }
  }
  if (runs.empty()) throw UsageError("profile: results files contain no rows");

  const auto effective = rule.value_or(*is_bench ? profiles::SolvedRule::Threshold : profiles::SolvedRule::TenPercent);
  if (effective == profiles::SolvedRule::Threshold && !*is_bench) {
    throw UsageError("profile: the threshold rule needs an 'error' column (bench results)");
  }
  std::map<std::string, profiles::ResultsTable> tables;
  try {
    tables = profiles::metrics_from_results(runs, effective);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("profile: ") + e.what());
  }
  const auto it = tables.find(metric);
  if (it == tables.end()) {
    std::string known;
    for (const auto& [name, _] : tables) known += (known.empty() ? "" : ", ") + name;
    throw UsageError("profile: metric '" + metric + "' not available for this rule (expected " + known + ")");
  }
  write_profile(out_dir, metric, profiles::make_profile(it->second));
  return {out_dir / ("profile_" + metric + ".csv"), out_dir / ("profile_" + metric + ".svg")};
}

CtRecord run_recon(const ExperimentConfig& config, const ScenarioSpec& scenario, const SolverVariant& variant,
                   const fs::path& out_dir) {
  validate(config);
  prepare_dir(out_dir);
  const CtInstance inst = build_ct_instance(config.ct, scenario);
  CtRecord r = run_ct_case(config.ct, inst, scenario, variant, config.seed);

  write_text(out_dir / "effective_config.ini", to_ini(config));
  ct::write_pgm(out_dir / "truth.pgm", inst.truth);
  ct::write_pgm(out_dir / "recon.pgm", r.reconstruction);
  ct::write_image_csv(out_dir / "recon.csv", r.reconstruction);
  ct::write_sinogram_csv(out_dir / "sinogram.csv", inst.problem.b);
  write_csv(out_dir / "history.csv", history_table(r.result));

  nlohmann::json j;
  j["scenario"] = r.scenario;
  j["solver"] = r.solver;
  j["mu"] = scenario.mu;
  j["config"] = solver_json(ct_solver_config(config.ct, variant, config.seed));
  j["f_min"] = real_json(r.f_min);
  j["total_evals"] = r.evals;
  j["evals_to_best"] = r.result.evals_to_best;
  j["iterations"] = r.result.iterations;
  j["stop_reason"] = r.result.stop_reason;
  j["psnr"] = real_json(r.psnr);
  j["ssim"] = real_json(r.ssim);
  j["wall_seconds"] = r.result.wall_seconds;
  j["cpu_seconds"] = r.cpu_seconds;
  write_text(out_dir / "run.json", j.dump(2) + "\n");
  return r;
}

}  // namespace scs::experiment
