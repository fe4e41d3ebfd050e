#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sgp/bench/config.hpp"
#include "sgp/discrepancy.hpp"
#include "sgp/feasible_region.hpp"
#include "sgp/imaging/composite.hpp"
#include "sgp/imaging/simulate.hpp"
#include "sgp/solver.hpp"

namespace sgp::bench {

/// A fully built test problem.
struct BenchProblem {
  std::shared_ptr<const SmoothObjective> objective;
  FeasibleRegion region;
  Vector x0;
  Vector truth;                                        ///< reference object for error reporting
  std::shared_ptr<const imaging::PoissonModel> model;  ///< null for non-imaging problems
  std::optional<imaging::Image> psf;
  std::optional<double> exact_optimum;                 ///< closed-form minimum when known
  std::optional<Vector> exact_minimizer;
  Vector jacobi;                                       ///< raw scaling for non-imaging problems

  std::unique_ptr<MetricProvider> metric(const std::string& schedule_spec) const;
};

BenchProblem build_problem(const BenchConfig& config);

/// Reference minimizer x_nu and value f(x_nu).
struct GroundTruth {
  Vector x;
  double f;
  bool from_cache = false;
};

/// Loads the cached reference run for this problem or computes it (a long
/// run of the configured ground-truth method) and caches it.
GroundTruth compute_ground_truth(const BenchConfig& config, const BenchProblem& problem);
std::filesystem::path ground_truth_path(const BenchConfig& config);

struct MethodResult {
  MethodSpec method;
  bool ok = false;
  std::string error;
  RunRecord record;
  Vector x;
  std::optional<std::size_t> iterations_to_gap;
  double final_gap = 0.0;
  double rel_error = 0.0;
  double seconds = 0.0;
};

struct BenchResult {
  double f_reference = 0.0;
  std::vector<MethodResult> methods;

  bool all_ok() const;
  const MethodResult* find(const std::string& name) const;
};

/// (f - f_ref) / |f_ref|, or the absolute gap when f_ref == 0.
double relative_gap(double f, double f_ref);

/// Runs every configured method and writes history_<method>.csv,
/// summary.csv and plotdata.csv under output.dir.
BenchResult run_benchmark(const BenchConfig& config);

/// One labelled trace for long-format plot data.
struct PlotSeries {
  std::string method;
  double f_reference = 0.0;
  RunRecord record;
};

/// Long-format CSV sorted by (method, k).
std::string emit_plotdata(const std::vector<PlotSeries>& series);
/// Inverse of emit_plotdata.
std::vector<PlotSeries> parse_plotdata(const std::string& csv, double f_reference = 0.0);

/// Per-iteration history CSV of one run.
std::string history_csv(const RunRecord& record, double f_reference);

struct AutoparamMethodResult {
  MethodSpec method;
  bool ok = false;
  std::string error;
  NuSolution solution;
  double rel_error = 0.0;
  double seconds = 0.0;
};

struct AutoparamResult {
  std::vector<AutoparamMethodResult> methods;
  double rho = 0.0;

  bool all_ok() const;
  const AutoparamMethodResult* find(const std::string& name) const;
};

/// Discrepancy CSV with columns outer_step, nu, discrepancy, inner_iters, f_value, seconds.
std::string discrepancy_csv(const std::vector<DiscrepancyStep>& trace);

/// Runs solve_for_nu per method; writes autoparam_<method>.csv,
/// reconstruction_<method>.{bin,pgm} and autoparam_summary.csv.
AutoparamResult run_autoparam(const BenchConfig& config);

/// Same as run_autoparam with a caller-supplied evaluator per method.
AutoparamResult run_autoparam_with(const BenchConfig& config, const BenchProblem& problem,
                                   const std::function<NuEvaluator(const MethodSpec&)>& make);

/// Writes truth, data and PSF images under output.dir.
void write_simulation(const BenchConfig& config, const BenchProblem& problem);

}  // namespace sgp::bench
