#pragma once

#include "sgp/feasible_region.hpp"
#include "sgp/metric.hpp"
#include "sgp/objective.hpp"
#include "sgp/types.hpp"

namespace sgp {

/// Scaled projection of x - alpha * D * grad onto the box in the D^-1 norm.
///
/// For a diagonal metric over a box this is the componentwise clamp of
/// x - alpha * D * grad to [lower, upper].
Vector scaled_projection(const Vector& x, const Vector& grad, double alpha,
                         const DiagonalMetric& metric, const FeasibleRegion& region);

struct DescentDirection {
  Vector y;            ///< projected point
  Vector d;            ///< y - x
  double directional;  ///< grad^T d
};

/// d = y - x together with the certificate grad^T d, which satisfies
/// grad^T d <= -||d||^2_{D^-1} / alpha. d == 0 iff x is stationary.
DescentDirection descent_direction(const Vector& x, const Vector& grad, double alpha,
                                   const DiagonalMetric& metric, const FeasibleRegion& region);

/// ||x - clamp(x - grad f(x))||, zero iff x is stationary on the box.
double stationarity_residual(const Vector& x, const SmoothObjective& objective,
                             const FeasibleRegion& region);

/// Same residual from an already evaluated gradient.
double stationarity_residual(const Vector& x, const Vector& grad, const FeasibleRegion& region);

}  // namespace sgp
