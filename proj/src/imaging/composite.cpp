#include "sgp/imaging/composite.hpp"

#include <cmath>

#include "sgp/errors.hpp"

namespace sgp::imaging {

CompositeObjective::CompositeObjective(std::shared_ptr<const PoissonModel> model, HSRegularizer reg,
                                       double nu)
    : model_(std::move(model)), reg_(std::move(reg)), nu_(nu) {
  if (!model_) throw InvalidInput("CompositeObjective: missing model");
  if (!(model_->shape() == reg_.shape())) {
    throw InvalidInput("CompositeObjective: model and regularizer shapes differ");
  }
  if (!(nu_ >= 0.0) || !std::isfinite(nu_)) {
    throw ParameterError("CompositeObjective: nu must be finite and nonnegative");
  }
}

double CompositeObjective::value(const Vector& x) const {
  return kl_value(*model_, x) + nu_ * reg_.value(x);
}

void CompositeObjective::gradient(const Vector& x, Vector& grad) const {
  value_and_gradient(x, grad);
}

double CompositeObjective::value_and_gradient(const Vector& x, Vector& grad) const {
  const double kl = kl_value_and_gradient(*model_, x, grad);
  grad += nu_ * reg_.gradient(x);
  return kl + nu_ * reg_.value(x);
}

DiagonalMetric build_scaling(const Vector& x, double nu, const Vector& V, double mu_k) {
  if (x.size() != V.size()) throw InvalidInput("build_scaling: size mismatch");
  if ((x.array() < 0.0).any()) throw DomainError("build_scaling: negative intensities");
  const Vector raw = (x.array() / (1.0 + nu * V.array())).matrix();
  return clamp_to_metric(raw, mu_k);
}

DiagonalMetric SplitGradientMetric::at(std::size_t k, const Vector& x, const Vector&) const {
  const double mu_k = mu_at(schedule_, k);
  if (mu_k == 1.0) return DiagonalMetric::identity(static_cast<std::size_t>(x.size()));
  const GradientSplit split = split_gradient(objective_.regularizer(), x);
  return build_scaling(x, objective_.nu(), split.V, mu_k);
}

}  // namespace sgp::imaging
