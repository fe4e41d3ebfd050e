#include "sgp/imaging/poisson.hpp"

#include <cmath>

#include "sgp/errors.hpp"

namespace sgp::imaging {

PoissonModel::PoissonModel(std::shared_ptr<const BlurOperator> op, Vector data, double background)
    : op_(std::move(op)), data_(std::move(data)), background_(background) {
  if (!op_) throw InvalidInput("PoissonModel: missing operator");
  if (static_cast<std::size_t>(data_.size()) != op_->shape().size()) {
    throw InvalidInput("PoissonModel: data size does not match the operator");
  }
  if (!data_.allFinite() || (data_.array() < 0.0).any()) {
    throw InvalidInput("PoissonModel: data must be finite and nonnegative");
  }
  if (!(background_ >= 0.0) || !std::isfinite(background_)) {
    throw InvalidInput("PoissonModel: background must be finite and nonnegative");
  }
}

namespace {

void check_domain(const PoissonModel& model, const Vector& x) {
  if (static_cast<std::size_t>(x.size()) != model.size()) {
    throw InvalidInput("KL: image size mismatch");
  }
  if ((x.array() < 0.0).any()) throw DomainError("KL: negative intensities");
}

}  // namespace

double kl_from_blurred(const PoissonModel& model, const Vector& ax) {
  const Vector& g = model.data();
  const double b = model.background();
  double total = 0.0;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const double mean = ax[i] + b;
    if (g[i] > 0.0) {
      if (!(mean > 0.0)) throw DomainError("KL: (Ax)_i + b vanishes where g_i > 0");
      total += g[i] * std::log(g[i] / mean) + mean - g[i];
    } else {
      total += mean;
    }
  }
  return total;
}

double kl_value(const PoissonModel& model, const Vector& x) {
  check_domain(model, x);
  return kl_from_blurred(model, model.op().apply(x));
}

double kl_value_and_gradient(const PoissonModel& model, const Vector& x, Vector& grad) {
  check_domain(model, x);
  const Vector ax = model.op().apply(x);
  const double value = kl_from_blurred(model, ax);
  const Vector& g = model.data();
  const double b = model.background();
  Vector ratio(g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    ratio[i] = g[i] > 0.0 ? 1.0 - g[i] / (ax[i] + b) : 1.0;
  }
  grad = model.op().apply_adjoint(ratio);
  return value;
}

Vector kl_gradient(const PoissonModel& model, const Vector& x) {
  Vector grad;
  kl_value_and_gradient(model, x, grad);
  return grad;
}

}  // namespace sgp::imaging
