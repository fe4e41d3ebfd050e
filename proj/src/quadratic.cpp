#include "sgp/quadratic.hpp"

#include "sgp/errors.hpp"

namespace sgp {

Quadratic::Quadratic(Eigen::MatrixXd hessian, Vector linear)
    : h_(std::move(hessian)), c_(std::move(linear)) {
  if (h_.rows() != h_.cols() || h_.rows() != c_.size()) {
    throw InvalidInput("Quadratic: shape mismatch");
  }
  if (!h_.isApprox(h_.transpose(), 1e-12)) throw InvalidInput("Quadratic: Hessian not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h_, Eigen::EigenvaluesOnly);
  lambda_min_ = eig.eigenvalues().minCoeff();
  lipschitz_ = eig.eigenvalues().maxCoeff();
  if (!(lambda_min_ > 0.0)) throw InvalidInput("Quadratic: Hessian not positive definite");
}

double Quadratic::value(const Vector& x) const { return 0.5 * x.dot(h_ * x) - c_.dot(x); }

void Quadratic::gradient(const Vector& x, Vector& grad) const { grad.noalias() = h_ * x - c_; }

double Quadratic::value_and_gradient(const Vector& x, Vector& grad) const {
  const Vector hx = h_ * x;
  grad = hx - c_;
  return 0.5 * x.dot(hx) - c_.dot(x);
}

Vector Quadratic::jacobi_scaling() const { return h_.diagonal().cwiseInverse(); }

}  // namespace sgp
