// Command-line driver: bench, ct, profile and recon studies.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "scs/experiment/config.hpp"
#include "scs/experiment/runner.hpp"

namespace {

namespace ex = scs::experiment;

constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct CommonOptions {
  std::string config_path;
  std::string preset = "desk";
  std::string out_dir = "results";
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("-c,--config", o.config_path, "INI file with [run], [bench], [ct] sections")->check(CLI::ExistingFile);
  cmd->add_option("-p,--preset", o.preset, "desk (N=64) or full (N=400)")->capture_default_str();
  cmd->add_option("-o,--out", o.out_dir, "output directory")->capture_default_str();
  cmd->add_option("-s,--seed", o.seed, "seed for phantoms and noise");
  cmd->add_option("-j,--workers", o.workers, "parallel worker threads")->check(CLI::PositiveNumber)->capture_default_str();
}

ex::ExperimentConfig load(const CommonOptions& o) {
  auto config = ex::default_config(o.preset);
  if (!o.config_path.empty()) ex::apply_config_file(config, o.config_path);
  if (o.seed) config.seed = *o.seed;
  return config;
}

std::vector<ex::SolverVariant> parse_solvers(const std::vector<std::string>& names) {
  std::vector<ex::SolverVariant> out;
  for (const auto& n : names) out.push_back(ex::parse_variant(n));
  return out;
}

void print_bench(const std::vector<ex::BenchRecord>& records) {
  std::printf("%-12s %-6s %14s %11s %7s %s\n", "problem", "solver", "f_min", "error", "evals", "solved");
  for (const auto& r : records) {
    std::printf("%-12s %-6s %14.6e %11.3e %7zu %s\n", r.problem.c_str(), r.solver.c_str(), r.f_min, r.error, r.evals,
                r.solved ? "yes" : "no");
  }
}

void print_ct(const std::vector<ex::CtRecord>& records) {
  std::printf("%-32s %-6s %14s %7s %8s %7s\n", "scenario", "solver", "f_min", "evals", "psnr", "ssim");
  for (const auto& r : records) {
    std::printf("%-32s %-6s %14.6e %7zu %8.3f %7.4f\n", r.scenario.c_str(), r.solver.c_str(), r.f_min, r.evals, r.psnr,
                r.ssim);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral conjugate subgradient experiments"};
  app.require_subcommand(1);

  CommonOptions bench_opts;
  std::vector<std::string> bench_problems;
  std::vector<std::string> bench_solvers;
  auto* bench = app.add_subcommand("bench", "run the nonsmooth benchmark study");
  add_common(bench, bench_opts);
  bench->add_option("--problems", bench_problems, "subset of problems")->delimiter(',');
  bench->add_option("--solvers", bench_solvers, "subset of solvers, e.g. NMB2,WB0")->delimiter(',');

  CommonOptions ct_opts;
  std::vector<std::string> ct_phantoms;
  std::vector<std::string> ct_modes;
  std::vector<std::string> ct_solvers;
  auto* ct = app.add_subcommand("ct", "run the CT reconstruction study");
  add_common(ct, ct_opts);
  ct->add_option("--phantoms", ct_phantoms, "shepplogan, threephases, grains")->delimiter(',');
  ct->add_option("--modes", ct_modes, "ld01, ld05, ld10, sv60, sv30")->delimiter(',');
  ct->add_option("--solvers", ct_solvers, "subset of NMB0..NMB3")->delimiter(',');

  std::vector<std::string> profile_inputs;
  std::string profile_metric;
  std::string profile_rule;
  std::string profile_out = "results";
  auto* profile = app.add_subcommand("profile", "build a performance profile from results CSVs");
  profile->add_option("inputs", profile_inputs, "bench_results.csv or ct_results.csv files")
      ->required()
      ->check(CLI::ExistingFile);
  profile->add_option("-m,--metric", profile_metric, "error, f_min, evals or cpu")->required();
  profile->add_option("-r,--rule", profile_rule, "threshold or ten_percent (default by file type)")
      ->check(CLI::IsMember({"threshold", "ten_percent"}));
  profile->add_option("-o,--out", profile_out, "output directory")->capture_default_str();

  CommonOptions recon_opts;
  std::string recon_phantom = "shepplogan";
  std::string recon_mode = "ld01";
  std::optional<double> recon_mu;
  std::string recon_solver = "NMB2";
  auto* recon = app.add_subcommand("recon", "reconstruct a single scenario to an image");
  add_common(recon, recon_opts);
  recon->add_option("--phantom", recon_phantom)->capture_default_str();
  recon->add_option("--mode", recon_mode)->capture_default_str();
  recon->add_option("--mu", recon_mu, "full-scale mu (scaled to the problem size unless scale_mu=false)");
  recon->add_option("--solver", recon_solver)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*bench) {
      auto config = load(bench_opts);
      if (!bench_problems.empty()) config.bench.problems = bench_problems;
      if (!bench_solvers.empty()) config.bench.solvers = parse_solvers(bench_solvers);
      const auto records = ex::run_bench(config, {bench_opts.out_dir, bench_opts.workers, true});
      print_bench(records);
      std::cout << "results written to " << bench_opts.out_dir << "\n";
    } else if (*ct) {
      auto config = load(ct_opts);
      if (!ct_phantoms.empty()) config.ct.phantoms = ct_phantoms;
      if (!ct_modes.empty()) config.ct.modes = ct_modes;
      if (!ct_solvers.empty()) config.ct.solvers = parse_solvers(ct_solvers);
      const auto records = ex::run_ct(config, {ct_opts.out_dir, ct_opts.workers, true});
      print_ct(records);
      std::cout << "results written to " << ct_opts.out_dir << "\n";
    } else if (*profile) {
      std::optional<scs::profiles::SolvedRule> rule;
      if (profile_rule == "threshold") rule = scs::profiles::SolvedRule::Threshold;
      if (profile_rule == "ten_percent") rule = scs::profiles::SolvedRule::TenPercent;
      std::vector<std::filesystem::path> inputs(profile_inputs.begin(), profile_inputs.end());
      for (const auto& path : ex::make_profiles(inputs, profile_metric, rule, profile_out)) {
        std::cout << "wrote " << path.string() << "\n";
      }
    } else if (*recon) {
      auto config = load(recon_opts);
      config.ct.phantoms = {recon_phantom};
      config.ct.modes = {recon_mode};
      const auto mode = ex::parse_mode(recon_mode, config.ct);
      auto& mu_list = mode.low_dose ? config.ct.mu_low_dose : config.ct.mu_sparse_view;
      if (recon_mu) mu_list = {*recon_mu};
      if (mu_list.empty()) throw ex::UsageError("recon: no mu configured for mode " + recon_mode);
      mu_list.resize(1);
      const auto variant = ex::parse_variant(recon_solver);
      config.ct.solvers = {variant};
      const auto scenario = ex::scenarios(config).front();
      const auto r = ex::run_recon(config, scenario, variant, recon_opts.out_dir);
      std::printf("%s %s: f_min=%.6e evals=%zu psnr=%.3f ssim=%.4f (mu=%g)\n", r.scenario.c_str(), r.solver.c_str(),
                  r.f_min, r.evals, r.psnr, r.ssim, scenario.mu);
      std::cout << "results written to " << recon_opts.out_dir << "\n";
    }
  } catch (const ex::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
