#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "sgp/types.hpp"

namespace sgp {

/// Value and gradient oracle for a continuously differentiable f.
///
/// Implementations must be safe for concurrent const use: independent solver
/// runs share one objective instance.
class SmoothObjective {
 public:
  virtual ~SmoothObjective() = default;

  virtual std::size_t dimension() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual void gradient(const Vector& x, Vector& grad) const = 0;

  /// Combined evaluation; override when value and gradient share work.
  virtual double value_and_gradient(const Vector& x, Vector& grad) const {
    gradient(x, grad);
    return value(x);
  }

  /// Lipschitz constant of the gradient, when known.
  virtual std::optional<double> lipschitz() const { return std::nullopt; }
};

/// Adapts a pair of callables to SmoothObjective.
class FunctionObjective final : public SmoothObjective {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using GradientFn = std::function<void(const Vector&, Vector&)>;

  FunctionObjective(std::size_t n, ValueFn value, GradientFn gradient,
                    std::optional<double> lipschitz = std::nullopt)
      : n_(n), value_(std::move(value)), gradient_(std::move(gradient)), lipschitz_(lipschitz) {}

  std::size_t dimension() const override { return n_; }
  double value(const Vector& x) const override { return value_(x); }
  void gradient(const Vector& x, Vector& grad) const override { gradient_(x, grad); }
  std::optional<double> lipschitz() const override { return lipschitz_; }

 private:
  std::size_t n_;
  ValueFn value_;
  GradientFn gradient_;
  std::optional<double> lipschitz_;
};

}  // namespace sgp
