#include "sgp/linesearch.hpp"

#include <cmath>
#include <string>

#include "sgp/errors.hpp"

namespace sgp {

void LineSearchParams::validate() const {
  if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("linesearch: beta must lie in (0,1)");
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("linesearch: delta must lie in (0,1)");
  if (max_backtracks == 0) throw ParameterError("linesearch: max_backtracks must be positive");
}

LineSearchResult armijo_linesearch(const SmoothObjective& objective, const Vector& x, double f_x,
                                   const Vector& d, double directional,
                                   const LineSearchParams& params) {
  params.validate();
  if (!(directional < 0.0)) {
    throw ContractViolation("armijo_linesearch: d is not a descent direction (grad^T d = " +
                            std::to_string(directional) + ")");
  }
  double lambda = 1.0;
  for (std::size_t backtracks = 0;; ++backtracks) {
    Vector trial = x + lambda * d;
    const double f_trial = objective.value(trial);
    // NaN fails the comparison and triggers a reduction.
    if (f_trial <= f_x + params.beta * lambda * directional) {
      return {lambda, f_trial, backtracks, std::move(trial)};
    }
    if (backtracks == params.max_backtracks) {
      throw LineSearchFailure("armijo_linesearch: no sufficient decrease after " +
                              std::to_string(params.max_backtracks) + " reductions");
    }
    lambda *= params.delta;
  }
}

}  // namespace sgp
