#include "sgp/projection.hpp"

#include <cmath>

#include "sgp/errors.hpp"

namespace sgp {

namespace {

void check_shapes(const Vector& x, const Vector& grad, const DiagonalMetric& metric,
                  const FeasibleRegion& region) {
  const auto n = x.size();
  if (grad.size() != n || static_cast<Eigen::Index>(metric.dimension()) != n ||
      static_cast<Eigen::Index>(region.dimension()) != n) {
    throw InvalidInput("scaled_projection: dimension mismatch");
  }
}

}  // namespace

Vector scaled_projection(const Vector& x, const Vector& grad, double alpha,
                         const DiagonalMetric& metric, const FeasibleRegion& region) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ParameterError("scaled_projection: alpha must be positive and finite");
  }
  check_shapes(x, grad, metric, region);
  if (!grad.allFinite()) throw InvalidInput("scaled_projection: non-finite gradient");
  Vector step = x - alpha * metric.diag().cwiseProduct(grad);
  return region.project(step);
}

DescentDirection descent_direction(const Vector& x, const Vector& grad, double alpha,
                                   const DiagonalMetric& metric, const FeasibleRegion& region) {
  DescentDirection out;
  out.y = scaled_projection(x, grad, alpha, metric, region);
  out.d = out.y - x;
  out.directional = grad.dot(out.d);
  return out;
}

double stationarity_residual(const Vector& x, const Vector& grad, const FeasibleRegion& region) {
  return (x - region.project(x - grad)).norm();
}

double stationarity_residual(const Vector& x, const SmoothObjective& objective,
                             const FeasibleRegion& region) {
  Vector grad(x.size());
  objective.gradient(x, grad);
  return stationarity_residual(x, grad, region);
}

}  // namespace sgp
