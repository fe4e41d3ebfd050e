#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "sgp/imaging/composite.hpp"
#include "sgp/imaging/poisson.hpp"
#include "sgp/linesearch.hpp"
#include "sgp/metric.hpp"
#include "sgp/solver.hpp"
#include "sgp/steplength.hpp"

namespace sgp {

struct DiscrepancyConfig {
  double eta = 1.0;
  double eps_inner = 5e-8;  ///< relative f-change tolerance of each inner solve
  double eps1 = 5e-4;
  double eps2 = 5e-3;
  std::size_t max_inner_iters = 5000;
  std::size_t max_outer_steps = 40;
  double nu_lo = 1e-6;
  double nu_hi = 1.0;
  double expand_factor = 10.0;
  std::size_t max_expansions = 12;

  void validate() const;
};

/// (2/n) KL(x).
double discrepancy_value(const imaging::PoissonModel& model, const Vector& x);

/// How each inner problem is solved.
struct InnerSolverSpec {
  BoundSchedule schedule = BoundSchedule::summable(1e10);
  SteplengthConfig steplength;
  LineSearchParams linesearch;
  bool record_time = true;
};

/// Minimizes KL + nu HS from `warm_start` until the relative f change drops
/// below eps_inner or max_inner_iters is reached.
SolveResult inner_solve(std::shared_ptr<const imaging::PoissonModel> model,
                        const imaging::HSRegularizer& reg, double nu, const Vector& warm_start,
                        const DiscrepancyConfig& config, const InnerSolverSpec& spec);

/// Result of one evaluation nu -> x_nu.
struct NuEvaluation {
  Vector x;
  double discrepancy;
  std::size_t inner_iterations;
  double f_value;
};

/// Computes x_nu from a warm start and reports its discrepancy.
using NuEvaluator = std::function<NuEvaluation(double nu, const Vector& warm_start)>;

struct DiscrepancyStep {
  std::size_t outer_step;  ///< 1-based
  double nu;
  double discrepancy;
  std::size_t inner_iters;
  double f_value;
  double seconds;
  double bracket_lo;  ///< bracket after this step (0 until bracketed)
  double bracket_hi;
  bool bisection;     ///< step taken by the bisection fallback
};

/// Bookkeeping of the outer iteration.
struct SecantState {
  std::vector<DiscrepancyStep> history;
  double lo = 0.0, hi = 0.0;
  double d_lo = 0.0, d_hi = 0.0;
  bool bracketed = false;
  Vector warm_start;

  std::size_t total_inner() const;
};

struct NuSolution {
  double nu = 0.0;
  Vector x;
  double discrepancy = 0.0;
  bool converged = false;
  std::string stop_reason;
  SecantState state;

  const std::vector<DiscrepancyStep>& trace() const { return state.history; }
  std::size_t total_inner() const { return state.total_inner(); }
};

/// Stopping predicate: |D - eta| <= eps1, or both |nu_k - nu_{k-1}| <= eps2 nu_k
/// and |D - eta| <= 10 eps1.
bool discrepancy_converged(const DiscrepancyConfig& config, double nu, double previous_nu,
                           bool has_previous, double discrepancy);

/// Solves D(x_nu) = eta over nu by a bracketed secant iteration in log(nu).
///
/// The initial bracket is expanded geometrically until D(lo) < eta < D(hi).
/// Secant candidates outside the bracket, or following a secant step that
/// failed to halve the bracket, are replaced by the geometric midpoint.
/// Throws NoRootError when the target cannot be bracketed.
NuSolution solve_for_nu(const NuEvaluator& evaluate, const Vector& x0,
                        const DiscrepancyConfig& config, bool record_time = true);

/// Evaluator running inner_solve on the composite KL + nu HS problem.
NuEvaluator imaging_evaluator(std::shared_ptr<const imaging::PoissonModel> model,
                              imaging::HSRegularizer reg, DiscrepancyConfig config,
                              InnerSolverSpec spec);

/// Flat starting image with the flux of the data above background.
Vector flat_start(const imaging::PoissonModel& model);

}  // namespace sgp
