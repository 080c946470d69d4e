#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "scs/ct/image.hpp"
#include "scs/ct/problem.hpp"
#include "scs/experiment/config.hpp"
#include "scs/profiles.hpp"
#include "scs/solver.hpp"

namespace scs::experiment {

struct RunOptions {
  std::filesystem::path out_dir;
  unsigned workers = 1;
  bool write_artifacts = true;  // false: compute results only
};

struct BenchRecord {
  std::string problem;
  std::string solver;
  double f_min = 0.0;
  double f_star = 0.0;
  double error = 0.0;
  std::size_t evals = 0;  // evaluations until f_min was first reached
  std::size_t total_evals = 0;
  double cpu_seconds = 0.0;
  bool solved = false;
  int iterations = 0;
  std::string stop_reason;
};

/// Every configured problem x solver, in config order. Writes run JSON files,
/// bench_results.csv, profiles for error/evals/cpu and effective_config.ini.
std::vector<BenchRecord> run_bench(const ExperimentConfig& config, const RunOptions& options);

struct CtInstance {
  ct::Image truth;
  ct::CtProblem problem;
};

/// Phantom, geometry and (noisy) sinogram for one scenario.
CtInstance build_ct_instance(const CtConfig& ct, const ScenarioSpec& scenario);

struct CtRecord {
  std::string scenario;
  std::string solver;
  double f_min = 0.0;
  std::size_t evals = 0;  // total objective evaluations
  double psnr = 0.0;
  double ssim = 0.0;
  double cpu_seconds = 0.0;
  ct::Image reconstruction;
  SolveResult result;
};

/// One reconstruction from x0 = 0 with the configured CT solver settings.
CtRecord run_ct_case(const CtConfig& ct, const CtInstance& instance, const ScenarioSpec& scenario,
                     const SolverVariant& variant, std::uint64_t seed);

/// Every scenario x solver. Writes reconstructions (PGM), f histories,
/// ct_results.csv, ct_best_quality.csv, ten-percent profiles and
/// effective_config.ini.
std::vector<CtRecord> run_ct(const ExperimentConfig& config, const RunOptions& options);

/// Reads bench_results.csv or ct_results.csv files (same schema), builds the
/// profile for one metric and writes profile_<metric>.csv and .svg. Without
/// an explicit rule, bench files use the error threshold and CT files the
/// ten-percent rule. Returns the written paths.
std::vector<std::filesystem::path> make_profiles(const std::vector<std::filesystem::path>& csv_paths,
                                                 const std::string& metric,
                                                 std::optional<profiles::SolvedRule> rule,
                                                 const std::filesystem::path& out_dir);

/// Writes profile_<metric>.csv (log2_tau, one column per solver) and .svg.
void write_profile(const std::filesystem::path& out_dir, const std::string& metric,
                   const profiles::Profile& profile);

/// Single reconstruction; writes truth, reconstruction, sinogram and history.
CtRecord run_recon(const ExperimentConfig& config, const ScenarioSpec& scenario, const SolverVariant& variant,
                   const std::filesystem::path& out_dir);

/// Runs job(i) for i in [0, count) on up to `workers` threads. The first
/// exception thrown by any job is rethrown after all threads finish.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& job);

}  // namespace scs::experiment
