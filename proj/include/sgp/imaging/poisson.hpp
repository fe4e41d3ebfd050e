#pragma once

#include <memory>

#include "sgp/imaging/blur.hpp"

namespace sgp::imaging {

/// Data model g ~ Poisson(A x + b) with blur A, constant background b and data g.
class PoissonModel {
 public:
  /// Throws InvalidInput on shape mismatch, negative data or negative background.
  /// b = 0 is accepted; KL then requires (A x)_i > 0.
  PoissonModel(std::shared_ptr<const BlurOperator> op, Vector data, double background);

  const BlurOperator& op() const { return *op_; }
  std::shared_ptr<const BlurOperator> op_ptr() const { return op_; }
  const Vector& data() const { return data_; }
  double background() const { return background_; }
  ImageShape shape() const { return op_->shape(); }
  std::size_t size() const { return op_->shape().size(); }

 private:
  std::shared_ptr<const BlurOperator> op_;
  Vector data_;
  double background_;
};

/// Generalized Kullback-Leibler divergence
///   sum_i g_i log(g_i / ((Ax)_i + b)) + (Ax)_i + b - g_i,
/// with 0 log(0/.) = 0. Throws DomainError for negative x.
double kl_value(const PoissonModel& model, const Vector& x);

/// A^T (e - g / (Ax + b)).
Vector kl_gradient(const PoissonModel& model, const Vector& x);

/// Value and gradient sharing one forward product.
double kl_value_and_gradient(const PoissonModel& model, const Vector& x, Vector& grad);

/// KL evaluated from a precomputed A x.
double kl_from_blurred(const PoissonModel& model, const Vector& ax);

}  // namespace sgp::imaging
