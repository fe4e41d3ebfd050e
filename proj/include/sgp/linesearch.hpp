#pragma once

#include <cstddef>

#include "sgp/objective.hpp"
#include "sgp/types.hpp"

namespace sgp {

struct LineSearchParams {
  double beta = 1e-4;   ///< sufficient-decrease fraction
  double delta = 0.5;   ///< backtracking factor
  std::size_t max_backtracks = 60;

  void validate() const;
};

struct LineSearchResult {
  double lambda;
  double f_new;
  std::size_t backtracks;
  Vector x_new;  ///< x + lambda * d
};

/// Armijo backtracking along the segment x + lambda d, lambda in {1, delta, delta^2, ...}.
///
/// Returns the first lambda with f(x + lambda d) <= f(x) + beta lambda grad^T d.
/// Throws ContractViolation when directional >= 0 and LineSearchFailure after
/// max_backtracks reductions.
LineSearchResult armijo_linesearch(const SmoothObjective& objective, const Vector& x, double f_x,
                                   const Vector& d, double directional,
                                   const LineSearchParams& params);

}  // namespace sgp
