// sgpbench: run gradient-projection variants on synthetic test problems.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sgp/bench/config.hpp"
#include "sgp/bench/csv.hpp"
#include "sgp/bench/runner.hpp"
#include "sgp/errors.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSolver = 2;
constexpr int kExitConfig = 3;

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> methods;
};

sgp::bench::BenchConfig resolve(const Overrides& o) {
  sgp::bench::BenchConfig config =
      o.config_path.empty() ? sgp::bench::BenchConfig() : sgp::bench::load_config(o.config_path);
  if (o.seed) config.problem.seed = *o.seed;
  if (!o.out.empty()) config.output.dir = o.out;
  if (!o.methods.empty()) {
    config.solver.methods.clear();
    for (const auto& m : o.methods) {
      try {
        config.solver.methods.push_back(sgp::bench::parse_method(m));
      } catch (const sgp::Error& e) {
        throw sgp::ConfigError(std::string("--method: ") + e.what());
      }
    }
  }
  return config;
}

int cmd_bench(const sgp::bench::BenchConfig& config) {
  const auto result = sgp::bench::run_benchmark(config);
  std::printf("%-12s %-16s %8s %10s %12s %12s\n", "method", "metric", "iters", "to_gap",
              "final_gap", "rel_error");
  for (const auto& m : result.methods) {
    if (!m.ok) {
      std::printf("%-12s %-16s FAILED: %s\n", m.method.name.c_str(), m.method.metric.c_str(),
                  m.error.c_str());
      continue;
    }
    const std::string to_gap =
        m.iterations_to_gap ? std::to_string(*m.iterations_to_gap) : std::string("-");
    std::printf("%-12s %-16s %8zu %10s %12.4e %12.4e\n", m.method.name.c_str(),
                m.method.metric.c_str(), m.record.iterations(), to_gap.c_str(), m.final_gap,
                m.rel_error);
  }
  std::printf("f_ref = %.17g\noutput: %s\n", result.f_reference, config.output.dir.c_str());
  return result.all_ok() ? kExitOk : kExitSolver;
}

int cmd_autoparam(const sgp::bench::BenchConfig& config) {
  const auto result = sgp::bench::run_autoparam(config);
  std::printf("rho = %.6g\n", result.rho);
  std::printf("%-12s %6s %8s %12s %12s %10s\n", "method", "steps", "k_tot", "nu", "D_A",
              "converged");
  for (const auto& m : result.methods) {
    if (!m.ok) {
      std::printf("%-12s FAILED: %s\n", m.method.name.c_str(), m.error.c_str());
      continue;
    }
    std::printf("%-12s %6zu %8zu %12.6g %12.6g %10s\n", m.method.name.c_str(),
                m.solution.trace().size(), m.solution.total_inner(), m.solution.nu,
                m.solution.discrepancy, m.solution.converged ? "yes" : "no");
  }
  return result.all_ok() ? kExitOk : kExitSolver;
}

int cmd_simulate(const sgp::bench::BenchConfig& config) {
  const auto problem = sgp::bench::build_problem(config);
  sgp::bench::write_simulation(config, problem);
  std::printf("wrote truth, data and psf to %s\n", config.output.dir.c_str());
  return kExitOk;
}

int cmd_groundtruth(const sgp::bench::BenchConfig& config) {
  const auto problem = sgp::bench::build_problem(config);
  const auto gt = sgp::bench::compute_ground_truth(config, problem);
  std::printf("f_ref = %.17g (%s)\n", gt.f, gt.from_cache ? "cached" : "computed");
  if (!problem.exact_minimizer) {
    std::printf("cache: %s\n", sgp::bench::ground_truth_path(config).c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scaled gradient projection benchmark harness"};
  app.require_subcommand(1);
  Overrides o;
  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "Configuration file")->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "Noise seed");
    sub->add_option("--out", o.out, "Output directory");
    sub->add_option("--method", o.methods, "gp | sgp_fixed | sgp | name=metric (repeatable)");
  };
  auto* bench = app.add_subcommand("bench", "Compare solver variants against a ground truth");
  auto* autoparam = app.add_subcommand("autoparam", "Select nu by the discrepancy principle");
  auto* simulate = app.add_subcommand("simulate", "Write the simulated test problem");
  auto* groundtruth = app.add_subcommand("groundtruth", "Compute or load the reference minimizer");
  for (auto* sub : {bench, autoparam, simulate, groundtruth}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    const auto config = resolve(o);
    if (bench->parsed()) return cmd_bench(config);
    if (autoparam->parsed()) return cmd_autoparam(config);
    if (simulate->parsed()) return cmd_simulate(config);
    return cmd_groundtruth(config);
  } catch (const sgp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const sgp::IoError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const sgp::Error& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolver;
  }
}
