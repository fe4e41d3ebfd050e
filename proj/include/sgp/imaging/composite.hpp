#pragma once

#include <memory>

#include "sgp/imaging/hypersurface.hpp"
#include "sgp/imaging/poisson.hpp"
#include "sgp/metric.hpp"
#include "sgp/objective.hpp"
#include "sgp/solver.hpp"

namespace sgp::imaging {

/// f(x) = KL(x) + nu * HS_rho(x) on the nonnegative orthant.
class CompositeObjective final : public SmoothObjective {
 public:
  CompositeObjective(std::shared_ptr<const PoissonModel> model, HSRegularizer reg, double nu);

  std::size_t dimension() const override { return model_->size(); }
  double value(const Vector& x) const override;
  void gradient(const Vector& x, Vector& grad) const override;
  double value_and_gradient(const Vector& x, Vector& grad) const override;

  const PoissonModel& model() const { return *model_; }
  std::shared_ptr<const PoissonModel> model_ptr() const { return model_; }
  const HSRegularizer& regularizer() const { return reg_; }
  double nu() const { return nu_; }

 private:
  std::shared_ptr<const PoissonModel> model_;
  HSRegularizer reg_;
  double nu_;
};

/// D_ii = clamp(x_i / (1 + nu V_i), 1/mu_k, mu_k).
DiagonalMetric build_scaling(const Vector& x, double nu, const Vector& V, double mu_k);

/// Split-gradient scaling for the composite objective under a bound schedule.
class SplitGradientMetric final : public MetricProvider {
 public:
  SplitGradientMetric(const CompositeObjective& objective, BoundSchedule schedule)
      : objective_(objective), schedule_(std::move(schedule)) {}

  DiagonalMetric at(std::size_t k, const Vector& x, const Vector& grad) const override;
  double mu(std::size_t k) const override { return mu_at(schedule_, k); }
  double log_theta_bound() const override { return schedule_.log_theta_bound(); }

 private:
  const CompositeObjective& objective_;
  BoundSchedule schedule_;
};

}  // namespace sgp::imaging
