#pragma once

#include <cstddef>
#include <deque>
#include <memory>
#include <optional>
#include <string>

#include "sgp/metric.hpp"
#include "sgp/types.hpp"

namespace sgp {

struct SteplengthConfig {
  double alpha_min = 1e-5;
  double alpha_max = 1e5;
  double alpha0 = 1.3;
  std::size_t memory = 3;  ///< BB2 window length
  double tau0 = 0.5;
  double tau_shrink = 0.9;
  double tau_grow = 1.1;

  void validate() const;
};

struct BBPair {
  double bb1;
  double bb2;
};

/// Scaled Barzilai-Borwein values
///   bb1 = s^T D^-1 D^-1 s / s^T D^-1 z,   bb2 = s^T D z / z^T D D z.
/// A non-positive denominator maps that rule to alpha_max.
/// Throws InvalidInput when s == 0.
BBPair bb_steplengths(const Vector& s, const Vector& z, const DiagonalMetric& metric,
                      double alpha_max);

/// Adaptive alternation between the two BB rules.
class BBAlternation {
 public:
  explicit BBAlternation(const SteplengthConfig& config) : config_(config), tau_(config.tau0) {}

  /// Pushes bb2 into the window and picks the next raw steplength:
  /// min over the BB2 window when bb2/bb1 <= tau (tau shrinks), bb1 otherwise
  /// (tau grows). The result is not clamped.
  double choose(const BBPair& values);

  double tau() const { return tau_; }
  const std::deque<double>& window() const { return window_; }

 private:
  SteplengthConfig config_;
  double tau_;
  std::deque<double> window_;
};

/// Strategy producing alpha_k in [alpha_min, alpha_max].
class SteplengthRule {
 public:
  virtual ~SteplengthRule() = default;
  /// Forget all history; called at the start of every solve.
  virtual void reset() = 0;
  virtual double next(const Vector& x, const Vector& grad, const DiagonalMetric& metric) = 0;
  virtual std::unique_ptr<SteplengthRule> clone() const = 0;
  virtual std::string describe() const = 0;
};

class ConstantSteplength final : public SteplengthRule {
 public:
  explicit ConstantSteplength(double alpha);
  void reset() override {}
  double next(const Vector&, const Vector&, const DiagonalMetric&) override { return alpha_; }
  std::unique_ptr<SteplengthRule> clone() const override;
  std::string describe() const override;

 private:
  double alpha_;
};

/// BB history: previous point/gradient plus the alternation state.
class BBSteplength final : public SteplengthRule {
 public:
  explicit BBSteplength(SteplengthConfig config = {});
  void reset() override;
  double next(const Vector& x, const Vector& grad, const DiagonalMetric& metric) override;
  std::unique_ptr<SteplengthRule> clone() const override;
  std::string describe() const override { return "bb"; }

  const BBAlternation& alternation() const { return alternation_; }

 private:
  SteplengthConfig config_;
  BBAlternation alternation_;
  std::optional<Vector> prev_x_;
  std::optional<Vector> prev_grad_;
  double prev_alpha_ = 0.0;
};

/// Parses "bb" or "constant:<a>".
std::unique_ptr<SteplengthRule> parse_steplength(const std::string& spec,
                                                 const SteplengthConfig& config);

}  // namespace sgp
