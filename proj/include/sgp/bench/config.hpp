#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sgp/discrepancy.hpp"
#include "sgp/linesearch.hpp"
#include "sgp/steplength.hpp"

namespace sgp::bench {

struct ProblemSpec {
  std::string kind = "shepp_logan";  ///< shepp_logan | file | quadratic
  std::size_t rows = 64;
  std::size_t cols = 64;
  std::string truth_file;            ///< object image for kind = file
  double psf_variance = 9.0;
  std::size_t psf_size = 33;
  std::string psf_file;              ///< overrides the Gaussian PSF when set
  double background = 10.0;
  double intensity = 500.0;          ///< multiplies the object only
  double scale = 1.0;                ///< multiplies object and background
  std::uint64_t seed = 1;
  bool noise = true;
  double nu = 0.0415;
  double rho = 1.0;
  double rho_relative = 0.0;         ///< when > 0, rho = rho_relative * max(g)
  std::size_t quadratic_dim = 50;
};

/// A named solver variant; `metric` is identity | fixed:<mu> | summable:<c>.
struct MethodSpec {
  std::string name;
  std::string metric;
};

struct SolverSpec {
  std::vector<MethodSpec> methods;
  std::string steplength = "bb";
  SteplengthConfig steplength_config;
  LineSearchParams linesearch;
};

struct RunSpec {
  std::size_t max_iters = 5000;
  double gap_tol = 1e-6;
  std::size_t groundtruth_iters = 1500;
  std::string groundtruth_metric = "summable:1e10";
  double rel_f_tol = 0.0;
  double stationarity_tol = 0.0;
  bool parallel = false;
  bool record_time = true;
};

struct OutputSpec {
  std::filesystem::path dir = "out";
  std::filesystem::path cache_dir;  ///< ground-truth cache; empty means `dir`
};

struct BenchConfig {
  ProblemSpec problem;
  SolverSpec solver;
  RunSpec run;
  OutputSpec output;
  DiscrepancyConfig discrepancy;

  BenchConfig();
};

/// The presets gp, sgp_fixed and sgp, or "name=metric" for a custom variant.
MethodSpec parse_method(const std::string& token);

/// Parses "key = value" lines; keys are dotted ("problem.rows") or grouped
/// under "[section]" headers. '#' starts a comment. Unknown keys, malformed
/// values and duplicate keys raise ConfigError.
BenchConfig parse_config(const std::string& text);
BenchConfig load_config(const std::filesystem::path& path);

/// Every recognised key, for help output.
std::vector<std::string> config_keys();

/// Canonical text of everything that determines the ground truth.
std::string problem_fingerprint(const BenchConfig& config);

}  // namespace sgp::bench
