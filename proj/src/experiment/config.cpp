#include "scs/experiment/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "scs/benchmarks.hpp"
#include "scs/ct/phantom.hpp"
#include "scs/ct/projector.hpp"
#include "scs/experiment/csv.hpp"

namespace scs::experiment {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::stringstream ss{std::string(s)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ", ";
    out += item;
  }
  return out;
}

std::string join_reals(const std::vector<double>& values) {
  std::vector<std::string> items;
  for (double v : values) items.push_back(format_real(v));
  return join(items);
}

std::string join_variants(const std::vector<SolverVariant>& variants) {
  std::vector<std::string> items;
  for (const auto& v : variants) items.push_back(v.name);
  return join(items);
}

std::vector<SolverVariant> parse_variants(std::string_view s) {
  std::vector<SolverVariant> out;
  for (const auto& name : split_list(s)) out.push_back(parse_variant(name));
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw UsageError("config: '" + key + "' expects a number, got '" + value + "'");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw UsageError("config: '" + key + "' expects an integer, got '" + value + "'");
  }
}

std::size_t parse_size(const std::string& key, const std::string& value) {
  const long long v = parse_int(key, value);
  if (v < 0) throw UsageError("config: '" + key + "' must be >= 0");
  return static_cast<std::size_t>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "on" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "off" || value == "no") return false;
  throw UsageError("config: '" + key + "' expects true/false, got '" + value + "'");
}

std::vector<double> parse_reals(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const auto& item : split_list(value)) out.push_back(parse_real(key, item));
  return out;
}

std::vector<SolverVariant> all_variants(std::initializer_list<LineSearchKind> kinds) {
  std::vector<SolverVariant> out;
  for (LineSearchKind kind : kinds) {
    for (BetaRule rule : {BetaRule::Zero, BetaRule::Perry, BetaRule::PolakRibiere, BetaRule::FletcherReeves}) {
      out.push_back({variant_name(rule, kind), rule, kind});
    }
  }
  return out;
}

void apply_run(ExperimentConfig& c, const std::string& key, const std::string& value) {
  if (key == "seed") {
    c.seed = static_cast<std::uint64_t>(parse_int(key, value));
  } else if (key == "preset") {
    if (value != c.preset) throw UsageError("config: preset '" + value + "' must be selected on the command line");
  } else {
    throw UsageError("config: unknown key [run] " + key);
  }
}

void apply_bench(BenchConfig& b, const std::string& key, const std::string& value) {
  if (key == "problems") {
    b.problems = split_list(value);
  } else if (key == "solvers") {
    b.solvers = parse_variants(value);
  } else if (key == "max_iter") {
    b.max_iter = static_cast<int>(parse_int(key, value));
  } else if (key == "memory") {
    b.memory = static_cast<int>(parse_int(key, value));
  } else if (key == "gamma") {
    b.gamma = parse_real(key, value);
  } else if (key == "sigma") {
    b.sigma = parse_real(key, value);
  } else if (key == "theta_min") {
    b.theta_min = parse_real(key, value);
  } else if (key == "theta_max") {
    b.theta_max = parse_real(key, value);
  } else {
    throw UsageError("config: unknown key [bench] " + key);
  }
}

void apply_ct(CtConfig& c, const std::string& key, const std::string& value) {
  if (key == "side") {
    c.side = parse_size(key, value);
  } else if (key == "n_det") {
    c.n_det = parse_size(key, value);
  } else if (key == "low_dose_views") {
    c.low_dose_views = parse_size(key, value);
  } else if (key == "phantoms") {
    c.phantoms = split_list(value);
  } else if (key == "modes") {
    c.modes = split_list(value);
  } else if (key == "mu_low_dose") {
    c.mu_low_dose = parse_reals(key, value);
  } else if (key == "mu_sparse_view") {
    c.mu_sparse_view = parse_reals(key, value);
  } else if (key == "scale_mu") {
    c.scale_mu = parse_bool(key, value);
  } else if (key == "solvers") {
    c.solvers = parse_variants(value);
  } else if (key == "max_iter") {
    c.max_iter = static_cast<int>(parse_int(key, value));
  } else if (key == "memory") {
    c.memory = static_cast<int>(parse_int(key, value));
  } else if (key == "grad_norm_stop") {
    c.grad_norm_stop = parse_real(key, value);
  } else if (key == "box_projection") {
    c.box_projection = parse_bool(key, value);
  } else {
    throw UsageError("config: unknown key [ct] " + key);
  }
}

// FNV-1a, so derived seeds do not depend on the standard library's hash.
std::uint64_t mix_seed(std::uint64_t seed, std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL ^ seed;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

SolverVariant parse_variant(std::string_view name) {
  LineSearchKind kind{};
  std::string_view rest;
  if (name.starts_with("NMB")) {
    kind = LineSearchKind::Nonmonotone;
    rest = name.substr(3);
  } else if (name.starts_with("WB")) {
    kind = LineSearchKind::Wolfe;
    rest = name.substr(2);
  } else {
    throw UsageError("unknown solver '" + std::string(name) + "' (expected NMB0..NMB3 or WB0..WB3)");
  }
  static constexpr BetaRule kRules[] = {BetaRule::Zero, BetaRule::Perry, BetaRule::PolakRibiere,
                                        BetaRule::FletcherReeves};
  if (rest.size() != 1 || rest[0] < '0' || rest[0] > '3') {
    throw UsageError("unknown solver '" + std::string(name) + "' (expected NMB0..NMB3 or WB0..WB3)");
  }
  const BetaRule rule = kRules[rest[0] - '0'];
  return {variant_name(rule, kind), rule, kind};
}

std::string variant_name(BetaRule beta, LineSearchKind line_search) {
  const std::string prefix = line_search == LineSearchKind::Nonmonotone ? "NM" : "W";
  return prefix + to_string(beta);
}

std::string ScenarioSpec::id() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", mu_reference);
  return phantom + "_" + mode.id + "_mu" + buf;
}

ExperimentConfig default_config(std::string_view preset) {
  ExperimentConfig c;
  c.preset = std::string(preset);
  c.bench.problems = bench::problem_names();
  c.bench.solvers = all_variants({LineSearchKind::Nonmonotone, LineSearchKind::Wolfe});
  c.ct.solvers = all_variants({LineSearchKind::Nonmonotone});

  if (preset == "desk") {
    c.ct.side = 64;
    c.ct.n_det = 90;
    c.ct.low_dose_views = 90;
    c.ct.phantoms = {"shepplogan", "grains"};
    c.ct.modes = {"ld01", "sv30"};
    c.ct.mu_low_dose = {25.0};
    c.ct.mu_sparse_view = {5.0};
  } else if (preset == "full") {
    c.ct.side = kReferenceSide;
    c.ct.n_det = 0;
    c.ct.low_dose_views = 360;
    c.ct.phantoms = ct::phantom_names();
    c.ct.modes = {"ld01", "ld05", "ld10", "sv60", "sv30"};
    c.ct.mu_low_dose = {25.0, 250.0, 2500.0};
    c.ct.mu_sparse_view = {0.5, 5.0, 50.0};
  } else {
    throw UsageError("unknown preset '" + std::string(preset) + "' (expected desk or full)");
  }
  return c;
}

void apply_config_file(ExperimentConfig& config, const std::filesystem::path& path) {
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw UsageError("config: " + std::string(e.what()));
  }
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw UsageError("config: key '" + section + "' must be inside a section");
    for (const auto& [key, node] : body) {
      const std::string value = trim(node.data());
      if (section == "run") {
        apply_run(config, key, value);
      } else if (section == "bench") {
        apply_bench(config.bench, key, value);
      } else if (section == "ct") {
        apply_ct(config.ct, key, value);
      } else {
        throw UsageError("config: unknown section [" + section + "]");
      }
    }
  }
}

void validate(const ExperimentConfig& config) {
  const auto& b = config.bench;
  const auto& known = bench::problem_names();
  std::set<std::string> seen;
  for (const auto& p : b.problems) {
    if (std::find(known.begin(), known.end(), p) == known.end()) throw UsageError("unknown problem '" + p + "'");
    if (!seen.insert(p).second) throw UsageError("problem '" + p + "' listed twice");
  }
  seen.clear();
  for (const auto& v : b.solvers) {
    if (!seen.insert(v.name).second) throw UsageError("solver '" + v.name + "' listed twice");
  }
  if (b.max_iter < 0) throw UsageError("bench.max_iter must be >= 0");
  if (b.memory < 0) throw UsageError("bench.memory must be >= 0");

  const auto& c = config.ct;
  if (c.side < 16) throw UsageError("ct.side must be >= 16 for the phantoms");
  if (c.low_dose_views < 1) throw UsageError("ct.low_dose_views must be >= 1");
  if (c.n_det != 0 && c.n_det < c.side) {
    throw UsageError("ct.n_det must be 0 (automatic) or at least the image side");
  }
  const auto& phantoms = ct::phantom_names();
  seen.clear();
  for (const auto& p : c.phantoms) {
    if (std::find(phantoms.begin(), phantoms.end(), p) == phantoms.end()) {
      throw UsageError("unknown phantom '" + p + "'");
    }
    if (!seen.insert(p).second) throw UsageError("phantom '" + p + "' listed twice");
  }
  seen.clear();
  for (const auto& m : c.modes) {
    parse_mode(m, c);
    if (!seen.insert(m).second) throw UsageError("mode '" + m + "' listed twice");
  }
  for (double mu : c.mu_low_dose) {
    if (!(mu >= 0.0)) throw UsageError("ct.mu_low_dose entries must be >= 0");
  }
  for (double mu : c.mu_sparse_view) {
    if (!(mu >= 0.0)) throw UsageError("ct.mu_sparse_view entries must be >= 0");
  }
  seen.clear();
  for (const auto& v : c.solvers) {
    if (!seen.insert(v.name).second) throw UsageError("solver '" + v.name + "' listed twice");
    if (c.box_projection && v.line_search == LineSearchKind::Wolfe) {
      throw UsageError("solver '" + v.name + "' cannot be combined with box projection");
    }
  }
  if (c.max_iter < 0) throw UsageError("ct.max_iter must be >= 0");
  if (c.memory < 0) throw UsageError("ct.memory must be >= 0");
}

std::string to_ini(const ExperimentConfig& c) {
  pt::ptree tree;
  tree.put("run.preset", c.preset);
  tree.put("run.seed", c.seed);

  tree.put("bench.problems", join(c.bench.problems));
  tree.put("bench.solvers", join_variants(c.bench.solvers));
  tree.put("bench.max_iter", c.bench.max_iter);
  tree.put("bench.memory", c.bench.memory);
  tree.put("bench.gamma", format_real(c.bench.gamma));
  tree.put("bench.sigma", format_real(c.bench.sigma));
  tree.put("bench.theta_min", format_real(c.bench.theta_min));
  tree.put("bench.theta_max", format_real(c.bench.theta_max));

  tree.put("ct.side", c.ct.side);
  tree.put("ct.n_det", c.ct.n_det);
  tree.put("ct.low_dose_views", c.ct.low_dose_views);
  tree.put("ct.phantoms", join(c.ct.phantoms));
  tree.put("ct.modes", join(c.ct.modes));
  tree.put("ct.mu_low_dose", join_reals(c.ct.mu_low_dose));
  tree.put("ct.mu_sparse_view", join_reals(c.ct.mu_sparse_view));
  tree.put("ct.scale_mu", c.ct.scale_mu ? "true" : "false");
  tree.put("ct.solvers", join_variants(c.ct.solvers));
  tree.put("ct.max_iter", c.ct.max_iter);
  tree.put("ct.memory", c.ct.memory);
  tree.put("ct.grad_norm_stop", format_real(c.ct.grad_norm_stop));
  tree.put("ct.box_projection", c.ct.box_projection ? "true" : "false");

  std::ostringstream out;
  pt::write_ini(out, tree);
  return out.str();
}

ModeSpec parse_mode(std::string_view id, const CtConfig& ct) {
  ModeSpec m;
  m.id = std::string(id);
  if (id == "ld01" || id == "ld05" || id == "ld10") {
    m.low_dose = true;
    m.noise = (id == "ld01") ? 0.01 : (id == "ld05") ? 0.05 : 0.10;
    m.views = ct.low_dose_views;
    m.reference_views = 360;
  } else if (id == "sv60" || id == "sv30") {
    m.low_dose = false;
    m.noise = 0.0;
    m.views = (id == "sv60") ? 60 : 30;
    m.reference_views = m.views;
  } else {
    throw UsageError("unknown mode '" + m.id + "' (expected ld01, ld05, ld10, sv60 or sv30)");
  }
  return m;
}

namespace {

// ||b||^2 grows like m N^2 and TV like N, so m N keeps the two terms balanced.
double mu_scale(const ModeSpec& mode, std::size_t n_det, std::size_t n_det_ref, std::size_t side) {
  const double m = static_cast<double>(mode.views * n_det);
  const double m_ref = static_cast<double>(mode.reference_views * n_det_ref);
  return (m / m_ref) * (static_cast<double>(side) / static_cast<double>(kReferenceSide));
}

}  // namespace

std::vector<ScenarioSpec> scenarios(const ExperimentConfig& config) {
  const auto& c = config.ct;
  const std::size_t n_det = c.n_det == 0 ? ct::default_detector_count(c.side) : c.n_det;
  const std::size_t n_det_ref = ct::default_detector_count(kReferenceSide);

  std::vector<ScenarioSpec> out;
  for (const auto& phantom : c.phantoms) {
    for (const auto& mode_id : c.modes) {
      const ModeSpec mode = parse_mode(mode_id, c);
      const double scale = c.scale_mu ? mu_scale(mode, n_det, n_det_ref, c.side) : 1.0;
      for (double mu : mode.low_dose ? c.mu_low_dose : c.mu_sparse_view) {
        ScenarioSpec s;
        s.phantom = phantom;
        s.mode = mode;
        s.mu_reference = mu;
        s.mu = mu * scale;
        s.seed = config.seed;
        out.push_back(s);
      }
    }
  }
  return out;
}

ScsConfig bench_solver_config(const BenchConfig& bench, const SolverVariant& variant, std::uint64_t seed) {
  ScsConfig s;
  s.beta_rule = variant.beta;
  s.line_search = variant.line_search;
  s.memory = bench.memory;
  s.gamma = bench.gamma;
  s.sigma = bench.sigma;
  s.theta_min = bench.theta_min;
  s.theta_max = bench.theta_max;
  s.max_iter = bench.max_iter;
  s.seed = seed;
  return s;
}

ScsConfig ct_solver_config(const CtConfig& ct, const SolverVariant& variant, std::uint64_t seed) {
  ScsConfig s;
  s.beta_rule = variant.beta;
  s.line_search = variant.line_search;
  s.memory = ct.memory;
  s.max_iter = ct.max_iter;
  s.grad_norm_stop = ct.grad_norm_stop;
  s.box_projection = ct.box_projection;
  s.seed = seed;
  return s;
}

std::uint64_t noise_seed(const ScenarioSpec& scenario) { return mix_seed(scenario.seed, scenario.id()); }

}  // namespace scs::experiment
