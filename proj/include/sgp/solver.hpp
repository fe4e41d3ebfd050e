#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "sgp/feasible_region.hpp"
#include "sgp/linesearch.hpp"
#include "sgp/metric.hpp"
#include "sgp/objective.hpp"
#include "sgp/steplength.hpp"
#include "sgp/types.hpp"

namespace sgp {

/// Supplies D_k in M_{mu_k}. The iteration index passed in starts at 1.
class MetricProvider {
 public:
  virtual ~MetricProvider() = default;
  virtual DiagonalMetric at(std::size_t k, const Vector& x, const Vector& grad) const = 0;
  virtual double mu(std::size_t k) const = 0;
  virtual double log_theta_bound() const = 0;
};

class IdentityMetric final : public MetricProvider {
 public:
  DiagonalMetric at(std::size_t, const Vector& x, const Vector&) const override {
    return DiagonalMetric::identity(static_cast<std::size_t>(x.size()));
  }
  double mu(std::size_t) const override { return 1.0; }
  double log_theta_bound() const override { return 0.0; }
};

/// Clamps problem-specific raw scaling values into the band given by a schedule.
class ScheduledMetric final : public MetricProvider {
 public:
  using ScalingFn = std::function<Vector(const Vector& x, const Vector& grad)>;

  ScheduledMetric(BoundSchedule schedule, ScalingFn scaling)
      : schedule_(std::move(schedule)), scaling_(std::move(scaling)) {}

  DiagonalMetric at(std::size_t k, const Vector& x, const Vector& grad) const override;
  double mu(std::size_t k) const override { return mu_at(schedule_, k); }
  double log_theta_bound() const override { return schedule_.log_theta_bound(); }
  const BoundSchedule& schedule() const { return schedule_; }

 private:
  BoundSchedule schedule_;
  ScalingFn scaling_;
};

/// OR-composition of the supported stopping tests. A zero tolerance disables a test.
struct StoppingRule {
  std::size_t max_iterations = 1000;
  double relative_f_change = 0.0;  ///< |f_k - f_{k-1}| <= eps |f_k|
  double stationarity = 0.0;       ///< stationarity_residual <= tol
};

enum class Termination { kMaxIterations, kRelativeChange, kStationarityTolerance, kStationary };

std::string to_string(Termination t);

struct RunEntry {
  std::size_t k;        ///< iterate index
  double f;             ///< f(x^(k))
  double lambda;        ///< linesearch result of the step that produced x^(k) (0 for k = 0)
  double alpha;         ///< steplength of that step
  double d_norm;        ///< ||d|| of that step
  double mu;            ///< metric bound of that step
  double seconds;       ///< wall time since the start of the run
};

/// Per-iteration trace of one solver run.
struct RunRecord {
  std::string label;
  std::vector<RunEntry> entries;
  Termination termination = Termination::kMaxIterations;
  double log_theta = 0.0;
  bool theta_flagged = false;

  std::size_t iterations() const { return entries.empty() ? 0 : entries.back().k; }
  /// True when the f column never increases.
  bool monotone() const;
};

/// Snapshot handed to observers after every accepted step.
struct IterateState {
  std::size_t k;  ///< index of the step (0-based), producing x^(k+1)
  const Vector& x;
  const Vector& y;
  const Vector& d;
  const Vector& grad;
  double f;              ///< f(x^(k))
  double f_new;          ///< f(x^(k+1))
  double directional;    ///< grad^T d
  double alpha;
  double lambda;
  std::size_t backtracks;
  const DiagonalMetric& metric;
};

struct SolverOptions {
  /// Check the descent certificate and sufficient decrease at every step.
  bool check_invariants = false;
  std::function<void(const IterateState&)> observer;
  bool record_time = true;
};

struct SolveResult {
  Vector x;
  double f;
  RunRecord record;
};

/// Scaled gradient projection with Armijo backtracking along the segment.
SolveResult sgp_solve(const SmoothObjective& objective, const FeasibleRegion& region,
                      const MetricProvider& metric, SteplengthRule& steplength,
                      const LineSearchParams& ls, const StoppingRule& stop, const Vector& x0,
                      const SolverOptions& options = {});

/// Plain gradient projection with Euclidean projection, written independently of sgp_solve.
SolveResult gp_solve(const SmoothObjective& objective, const FeasibleRegion& region,
                     SteplengthRule& steplength, const LineSearchParams& ls,
                     const StoppingRule& stop, const Vector& x0);

}  // namespace sgp
