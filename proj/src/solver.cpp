#include "sgp/solver.hpp"

#include <chrono>
#include <cmath>

#include "sgp/errors.hpp"
#include "sgp/projection.hpp"

namespace sgp {

namespace {

using Clock = std::chrono::steady_clock;

class Stopwatch {
 public:
  explicit Stopwatch(bool enabled) : enabled_(enabled), start_(Clock::now()) {}
  double seconds() const {
    if (!enabled_) return 0.0;
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  bool enabled_;
  Clock::time_point start_;
};

void check_start(const SmoothObjective& objective, const FeasibleRegion& region, const Vector& x0) {
  const auto n = static_cast<Eigen::Index>(objective.dimension());
  if (x0.size() != n || static_cast<Eigen::Index>(region.dimension()) != n) {
    throw InvalidInput("solver: dimension mismatch between objective, region and x0");
  }
  if (!region.contains(x0)) throw InvalidInput("solver: x0 is not feasible");
}

bool relative_change_met(const StoppingRule& stop, double f_old, double f_new) {
  return stop.relative_f_change > 0.0 &&
         std::abs(f_new - f_old) <= stop.relative_f_change * std::abs(f_new);
}

}  // namespace

std::string to_string(Termination t) {
  switch (t) {
    case Termination::kMaxIterations:
      return "max_iterations";
    case Termination::kRelativeChange:
      return "relative_change";
    case Termination::kStationarityTolerance:
      return "stationarity_tolerance";
    case Termination::kStationary:
      return "stationary";
  }
  return "unknown";
}

bool RunRecord::monotone() const {
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (!(entries[i].f <= entries[i - 1].f)) return false;
  }
  return true;
}

DiagonalMetric ScheduledMetric::at(std::size_t k, const Vector& x, const Vector& grad) const {
  return clamp_to_metric(scaling_(x, grad), mu_at(schedule_, k));
}

SolveResult sgp_solve(const SmoothObjective& objective, const FeasibleRegion& region,
                      const MetricProvider& metric, SteplengthRule& steplength,
                      const LineSearchParams& ls, const StoppingRule& stop, const Vector& x0,
                      const SolverOptions& options) {
  ls.validate();
  check_start(objective, region, x0);
  const Stopwatch clock(options.record_time);

  SolveResult out;
  out.x = x0;
  Vector grad(x0.size());
  out.f = objective.value_and_gradient(out.x, grad);
  if (!std::isfinite(out.f) || !grad.allFinite()) {
    throw InvalidInput("sgp_solve: objective or gradient not finite at x0");
  }

  steplength.reset();
  ThetaMonitor theta(metric.log_theta_bound());
  RunRecord& record = out.record;
  record.entries.push_back({0, out.f, 0.0, 0.0, 0.0, 0.0, clock.seconds()});

  for (std::size_t k = 0;; ++k) {
    if (k >= stop.max_iterations) {
      record.termination = Termination::kMaxIterations;
      break;
    }
    if (stop.stationarity > 0.0 && stationarity_residual(out.x, grad, region) <= stop.stationarity) {
      record.termination = Termination::kStationarityTolerance;
      break;
    }

    const DiagonalMetric D = metric.at(k + 1, out.x, grad);
    theta.update(D.mu());
    const double alpha = steplength.next(out.x, grad, D);
    const DescentDirection dir = descent_direction(out.x, grad, alpha, D, region);

    // d = 0 certifies stationarity; a non-negative certificate with d != 0
    // only happens when rounding swamps a vanishing step.
    if (dir.d.isZero(0.0) || !(dir.directional < 0.0)) {
      record.termination = Termination::kStationary;
      break;
    }
    if (options.check_invariants) {
      const double bound = -D.inverse_norm_squared(dir.d) / alpha;
      if (dir.directional > bound + 1e-10 * std::max(1.0, std::abs(bound))) {
        throw ContractViolation("sgp_solve: descent certificate violated at step " +
                                std::to_string(k));
      }
    }

    LineSearchResult step = armijo_linesearch(objective, out.x, out.f, dir.d, dir.directional, ls);

    if (options.check_invariants &&
        !(step.f_new <= out.f + ls.beta * step.lambda * dir.directional)) {
      throw ContractViolation("sgp_solve: sufficient decrease violated at step " +
                              std::to_string(k));
    }
    if (options.observer) {
      options.observer(IterateState{k, out.x, dir.y, dir.d, grad, out.f, step.f_new,
                                    dir.directional, alpha, step.lambda, step.backtracks, D});
    }

    const double f_old = out.f;
    out.x = std::move(step.x_new);
    out.f = step.f_new;
    objective.gradient(out.x, grad);
    record.entries.push_back(
        {k + 1, out.f, step.lambda, alpha, dir.d.norm(), D.mu(), clock.seconds()});

    if (relative_change_met(stop, f_old, out.f)) {
      record.termination = Termination::kRelativeChange;
      break;
    }
  }
  record.log_theta = theta.log_theta();
  record.theta_flagged = theta.flagged();
  return out;
}

SolveResult gp_solve(const SmoothObjective& objective, const FeasibleRegion& region,
                     SteplengthRule& steplength, const LineSearchParams& ls,
                     const StoppingRule& stop, const Vector& x0) {
  ls.validate();
  check_start(objective, region, x0);
  const Stopwatch clock(true);
  const auto identity = DiagonalMetric::identity(objective.dimension());

  SolveResult out;
  out.x = x0;
  Vector grad(x0.size());
  out.f = objective.value_and_gradient(out.x, grad);
  if (!std::isfinite(out.f) || !grad.allFinite()) {
    throw InvalidInput("gp_solve: objective or gradient not finite at x0");
  }
  steplength.reset();
  out.record.entries.push_back({0, out.f, 0.0, 0.0, 0.0, 0.0, clock.seconds()});

  std::size_t k = 0;
  while (true) {
    if (k >= stop.max_iterations) {
      out.record.termination = Termination::kMaxIterations;
      break;
    }
    const Vector r = out.x - region.project(out.x - grad);
    if (stop.stationarity > 0.0 && r.norm() <= stop.stationarity) {
      out.record.termination = Termination::kStationarityTolerance;
      break;
    }
    const double alpha = steplength.next(out.x, grad, identity);
    const Vector y = region.project(out.x - alpha * grad);
    const Vector d = y - out.x;
    const double gd = grad.dot(d);
    if (d.isZero(0.0) || !(gd < 0.0)) {
      out.record.termination = Termination::kStationary;
      break;
    }
    LineSearchResult step = armijo_linesearch(objective, out.x, out.f, d, gd, ls);
    const double f_old = out.f;
    out.x = std::move(step.x_new);
    out.f = step.f_new;
    objective.gradient(out.x, grad);
    ++k;
    out.record.entries.push_back({k, out.f, step.lambda, alpha, d.norm(), 1.0, clock.seconds()});
    if (relative_change_met(stop, f_old, out.f)) {
      out.record.termination = Termination::kRelativeChange;
      break;
    }
  }
  return out;
}

}  // namespace sgp
