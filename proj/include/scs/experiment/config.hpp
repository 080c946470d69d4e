#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "scs/solver.hpp"

namespace scs::experiment {

/// Bad input from the user (unknown ids, malformed config, schema mismatch).
/// The CLI maps it to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverVariant {
  std::string name;  // "NMB0".."NMB3", "WB0".."WB3"
  BetaRule beta = BetaRule::Zero;
  LineSearchKind line_search = LineSearchKind::Nonmonotone;
};

SolverVariant parse_variant(std::string_view name);
std::string variant_name(BetaRule beta, LineSearchKind line_search);

struct BenchConfig {
  std::vector<std::string> problems;
  std::vector<SolverVariant> solvers;
  int max_iter = 1000;
  int memory = 7;
  double gamma = 1e-4;
  double sigma = 0.9;
  double theta_min = 1e-10;
  double theta_max = 1e10;
};

/// Acquisition mode. "ld01", "ld05", "ld10" are low-dose (noise level in
/// percent); "sv60", "sv30" are noise-free sparse-view with that many views.
struct ModeSpec {
  std::string id;
  bool low_dose = true;
  double noise = 0.0;
  std::size_t views = 0;            // views used in this configuration
  std::size_t reference_views = 0;  // views in the full-scale protocol
};

struct ScenarioSpec {
  std::string phantom;
  ModeSpec mode;
  double mu_reference = 0.0;  // value from the full-scale mu list
  double mu = 0.0;            // value actually used
  std::uint64_t seed = 0;

  std::string id() const;
};

/// Noise seed derived from the scenario seed and id, stable across platforms.
std::uint64_t noise_seed(const ScenarioSpec& scenario);

struct CtConfig {
  std::size_t side = 64;
  std::size_t n_det = 0;  // 0 selects the default detector count
  std::size_t low_dose_views = 90;
  std::vector<std::string> phantoms;
  std::vector<std::string> modes;
  std::vector<double> mu_low_dose;
  std::vector<double> mu_sparse_view;
  // Scale mu by (m / m_full) (N / N_full) so the data/TV balance matches the
  // full-size problem.
  bool scale_mu = true;
  std::vector<SolverVariant> solvers;
  int max_iter = 200;
  int memory = 7;
  double grad_norm_stop = 1e-10;
  bool box_projection = true;
};

struct ExperimentConfig {
  std::string preset = "desk";
  std::uint64_t seed = 1;
  BenchConfig bench;
  CtConfig ct;
};

/// "desk" (N = 64) or "full" (N = 400). Throws UsageError otherwise.
ExperimentConfig default_config(std::string_view preset);

/// Overlays keys from an INI file with sections [run], [bench], [ct].
/// Unknown sections or keys are usage errors.
void apply_config_file(ExperimentConfig& config, const std::filesystem::path& path);

/// Checks ids and ranges; throws UsageError naming the first problem found.
void validate(const ExperimentConfig& config);

/// INI text of the effective configuration, readable by apply_config_file.
std::string to_ini(const ExperimentConfig& config);

ModeSpec parse_mode(std::string_view id, const CtConfig& ct);

/// All phantom x mode x mu combinations in config order.
std::vector<ScenarioSpec> scenarios(const ExperimentConfig& config);

/// Solver settings for one benchmark run.
ScsConfig bench_solver_config(const BenchConfig& bench, const SolverVariant& variant, std::uint64_t seed);

/// Solver settings for one reconstruction run.
ScsConfig ct_solver_config(const CtConfig& ct, const SolverVariant& variant, std::uint64_t seed);

inline constexpr std::size_t kReferenceSide = 400;

}  // namespace scs::experiment
