#pragma once

#include <Eigen/Dense>

#include "sgp/objective.hpp"

namespace sgp {

/// f(x) = 1/2 x^T H x - c^T x with H symmetric positive definite.
class Quadratic final : public SmoothObjective {
 public:
  Quadratic(Eigen::MatrixXd hessian, Vector linear);

  std::size_t dimension() const override { return static_cast<std::size_t>(c_.size()); }
  double value(const Vector& x) const override;
  void gradient(const Vector& x, Vector& grad) const override;
  double value_and_gradient(const Vector& x, Vector& grad) const override;
  std::optional<double> lipschitz() const override { return lipschitz_; }

  const Eigen::MatrixXd& hessian() const { return h_; }
  const Vector& linear() const { return c_; }
  double smallest_eigenvalue() const { return lambda_min_; }

  /// Jacobi scaling 1 / H_ii, a natural raw diagonal metric for this problem.
  Vector jacobi_scaling() const;

 private:
  Eigen::MatrixXd h_;
  Vector c_;
  double lipschitz_;
  double lambda_min_;
};

}  // namespace sgp
