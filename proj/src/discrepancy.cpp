#include "sgp/discrepancy.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

#include "sgp/errors.hpp"

namespace sgp {

void DiscrepancyConfig::validate() const {
  if (!(eta > 0.0)) throw ParameterError("discrepancy: eta must be positive");
  if (!(eps_inner > 0.0 && eps1 > 0.0 && eps2 > 0.0)) {
    throw ParameterError("discrepancy: tolerances must be positive");
  }
  if (!(nu_lo > 0.0 && nu_lo < nu_hi)) throw ParameterError("discrepancy: need 0 < nu_lo < nu_hi");
  if (!(expand_factor > 1.0)) throw ParameterError("discrepancy: expand_factor must exceed 1");
  if (max_inner_iters == 0 || max_outer_steps < 2) {
    throw ParameterError("discrepancy: iteration caps too small");
  }
}

double discrepancy_value(const imaging::PoissonModel& model, const Vector& x) {
  return 2.0 / static_cast<double>(model.size()) * imaging::kl_value(model, x);
}

SolveResult inner_solve(std::shared_ptr<const imaging::PoissonModel> model,
                        const imaging::HSRegularizer& reg, double nu, const Vector& warm_start,
                        const DiscrepancyConfig& config, const InnerSolverSpec& spec) {
  if (!(nu > 0.0)) throw ParameterError("inner_solve: nu must be positive");
  const imaging::CompositeObjective objective(std::move(model), reg, nu);
  const imaging::SplitGradientMetric metric(objective, spec.schedule);
  BBSteplength steplength(spec.steplength);
  StoppingRule stop;
  stop.max_iterations = config.max_inner_iters;
  stop.relative_f_change = config.eps_inner;
  SolverOptions options;
  options.record_time = spec.record_time;
  return sgp_solve(objective, FeasibleRegion::nonnegative(objective.dimension()), metric,
                   steplength, spec.linesearch, stop, warm_start, options);
}

std::size_t SecantState::total_inner() const {
  return std::accumulate(history.begin(), history.end(), std::size_t{0},
                         [](std::size_t acc, const DiscrepancyStep& s) { return acc + s.inner_iters; });
}

bool discrepancy_converged(const DiscrepancyConfig& config, double nu, double previous_nu,
                           bool has_previous, double discrepancy) {
  const double miss = std::abs(discrepancy - config.eta);
  if (miss <= config.eps1) return true;
  return has_previous && std::abs(nu - previous_nu) <= config.eps2 * nu && miss <= 10.0 * config.eps1;
}

namespace {

class OuterLoop {
 public:
  OuterLoop(const NuEvaluator& evaluate, const Vector& x0, const DiscrepancyConfig& config,
            bool record_time)
      : evaluate_(evaluate), config_(config), record_time_(record_time),
        start_(std::chrono::steady_clock::now()) {
    solution_.state.warm_start = x0;
  }

  NuSolution run() {
    // lower end: need D(lo) < eta
    double lo = config_.nu_lo;
    if (step(lo, false)) return finish("converged");
    for (std::size_t e = 0; last().discrepancy >= config_.eta; ++e) {
      if (e == config_.max_expansions) throw NoRootError("discrepancy target below reachable range");
      lo /= config_.expand_factor;
      if (step(lo, false)) return finish("converged");
    }
    double d_lo = last().discrepancy;

    double hi = config_.nu_hi;
    if (step(hi, false)) return finish("converged");
    for (std::size_t e = 0; last().discrepancy <= config_.eta; ++e) {
      if (e == config_.max_expansions) throw NoRootError("discrepancy target above reachable range");
      lo = hi;
      d_lo = last().discrepancy;
      hi *= config_.expand_factor;
      if (step(hi, false)) return finish("converged");
    }
    SecantState& st = solution_.state;
    st.bracketed = true;
    st.lo = lo;
    st.hi = hi;
    st.d_lo = d_lo;
    st.d_hi = last().discrepancy;
    st.history.back().bracket_lo = st.lo;
    st.history.back().bracket_hi = st.hi;

    bool force_bisection = false;
    while (st.history.size() < config_.max_outer_steps) {
      const DiscrepancyStep& a = previous();
      const DiscrepancyStep& b = last();
      // secant in log(nu): nu spans decades and D is far from linear in nu
      const double la = std::log(a.nu), lb = std::log(b.nu);
      double candidate = std::exp(lb - (b.discrepancy - config_.eta) * (lb - la) /
                                           (b.discrepancy - a.discrepancy));
      bool bisect = force_bisection || !std::isfinite(candidate) || candidate <= st.lo ||
                    candidate >= st.hi;
      if (bisect) candidate = std::sqrt(st.lo * st.hi);
      const double width_before = std::log(st.hi / st.lo);

      const bool done = step(candidate, bisect);
      const double d = last().discrepancy;
      if (d < config_.eta) {
        st.lo = candidate;
        st.d_lo = d;
      } else {
        st.hi = candidate;
        st.d_hi = d;
      }
      st.history.back().bracket_lo = st.lo;
      st.history.back().bracket_hi = st.hi;
      if (done) return finish("converged");
      force_bisection = !bisect && std::log(st.hi / st.lo) > 0.5 * width_before;
    }
    return finish("max_outer_steps");
  }

 private:
  // Evaluates nu, records the step and reports whether the stopping test holds.
  bool step(double nu, bool bisection) {
    SecantState& st = solution_.state;
    NuEvaluation e = evaluate_(nu, st.warm_start);
    if (!std::isfinite(e.discrepancy)) throw InvalidInput("discrepancy evaluation not finite");
    const bool has_previous = !st.history.empty();
    const double previous_nu = has_previous ? st.history.back().nu : 0.0;
    st.history.push_back({st.history.size() + 1, nu, e.discrepancy, e.inner_iterations, e.f_value,
                          seconds(), st.lo, st.hi, bisection});
    st.warm_start = std::move(e.x);
    return discrepancy_converged(config_, nu, previous_nu, has_previous, e.discrepancy);
  }

  NuSolution finish(const char* reason) {
    const DiscrepancyStep& s = last();
    solution_.nu = s.nu;
    solution_.x = solution_.state.warm_start;
    solution_.discrepancy = s.discrepancy;
    solution_.converged = std::string(reason) == "converged";
    solution_.stop_reason = reason;
    return std::move(solution_);
  }

  const DiscrepancyStep& last() const { return solution_.state.history.back(); }
  const DiscrepancyStep& previous() const {
    const auto& h = solution_.state.history;
    return h[h.size() - 2];
  }

  double seconds() const {
    if (!record_time_) return 0.0;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  const NuEvaluator& evaluate_;
  DiscrepancyConfig config_;
  bool record_time_;
  std::chrono::steady_clock::time_point start_;
  NuSolution solution_;
};

}  // namespace

NuSolution solve_for_nu(const NuEvaluator& evaluate, const Vector& x0,
                        const DiscrepancyConfig& config, bool record_time) {
  config.validate();
  if (!evaluate) throw ParameterError("solve_for_nu: missing evaluator");
  return OuterLoop(evaluate, x0, config, record_time).run();
}

NuEvaluator imaging_evaluator(std::shared_ptr<const imaging::PoissonModel> model,
                              imaging::HSRegularizer reg, DiscrepancyConfig config,
                              InnerSolverSpec spec) {
  return [model = std::move(model), reg = std::move(reg), config, spec](double nu,
                                                                        const Vector& warm) {
    SolveResult r = inner_solve(model, reg, nu, warm, config, spec);
    NuEvaluation e;
    e.discrepancy = discrepancy_value(*model, r.x);
    e.inner_iterations = r.record.iterations();
    e.f_value = r.f;
    e.x = std::move(r.x);
    return e;
  };
}

Vector flat_start(const imaging::PoissonModel& model) {
  const double n = static_cast<double>(model.size());
  const double flux = model.data().sum() - n * model.background();
  const double level = flux > 0.0 ? flux / n : 1.0;
  return Vector::Constant(model.data().size(), level);
}

}  // namespace sgp
