#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <string>

#include "sgp/types.hpp"

namespace sgp {

/// Diagonal scaling matrix D with entries in [1/mu, mu], i.e. D in M_mu.
class DiagonalMetric {
 public:
  /// The identity of dimension n (mu = 1).
  static DiagonalMetric identity(std::size_t n);

  /// Throws InvalidInput unless every entry lies in [1/mu, mu] and mu >= 1.
  DiagonalMetric(Vector diag, double mu);

  const Vector& diag() const { return diag_; }
  double mu() const { return mu_; }
  std::size_t dimension() const { return static_cast<std::size_t>(diag_.size()); }

  /// ||x||_D^2 = x^T D x
  double norm_squared(const Vector& x) const;
  /// ||x||_{D^-1}^2 = x^T D^-1 x
  double inverse_norm_squared(const Vector& x) const;

 private:
  Vector diag_;
  double mu_;
};

/// Clamp `values` into the band [1/mu_k, mu_k].
DiagonalMetric clamp_to_metric(const Vector& values, double mu_k);

/// Eigenvalue-bound schedule mu_k (k >= 1).
///
/// Variable mode uses mu_k^2 = 1 + zeta_k with zeta_k = c / k^2; custom mode
/// takes any user sequence zeta_k, which should be summable.
class BoundSchedule {
 public:
  enum class Mode { kFixed, kSummable, kCustom };

  static BoundSchedule identity() { return fixed(1.0); }
  static BoundSchedule fixed(double mu);
  static BoundSchedule summable(double c);
  static BoundSchedule custom(std::function<double(std::size_t)> zeta, std::string name = "custom");

  /// Parses "identity", "fixed:<mu>" or "summable:<c>".
  static BoundSchedule parse(const std::string& spec);

  Mode mode() const { return mode_; }
  /// mu for fixed mode, c for summable mode.
  double parameter() const { return parameter_; }
  std::string describe() const;

  /// zeta_k = mu_k^2 - 1, computed without cancellation.
  double zeta_at(std::size_t k) const;

  /// Upper bound on log(theta_k) = sum_j log(mu_j^2), or +inf when the
  /// schedule is not known to be summable.
  double log_theta_bound() const;

 private:
  BoundSchedule(Mode mode, double parameter) : mode_(mode), parameter_(parameter) {}

  Mode mode_;
  double parameter_;
  std::function<double(std::size_t)> zeta_;
  std::string name_;
};

/// mu_k for k >= 1. Throws IndexError for k = 0.
double mu_at(const BoundSchedule& schedule, std::size_t k);

/// Running product theta_k = prod_{j<=k} mu_j^2 tracked in log space.
///
/// Flags the schedule once zeta_k stops decreasing for `patience` consecutive
/// updates while staying positive, or once log(theta_k) exceeds a supplied
/// bound. A flagged schedule violates the summability condition the
/// convergence theory needs.
class ThetaMonitor {
 public:
  explicit ThetaMonitor(double log_bound = std::numeric_limits<double>::infinity(),
                        std::size_t patience = 3)
      : log_bound_(log_bound), patience_(patience) {}

  void update(double mu_k);

  std::size_t steps() const { return steps_; }
  double log_theta() const { return log_theta_; }
  double log_bound() const { return log_bound_; }
  bool flagged() const { return flagged_; }
  /// Step at which the flag was raised (0 if never).
  std::size_t flagged_at() const { return flagged_at_; }
  const std::string& reason() const { return reason_; }

 private:
  void raise(std::string reason);

  double log_bound_;
  std::size_t patience_;
  std::size_t steps_ = 0;
  double log_theta_ = 0.0;
  double last_zeta_ = std::numeric_limits<double>::infinity();
  std::size_t stalled_ = 0;
  bool flagged_ = false;
  std::size_t flagged_at_ = 0;
  std::string reason_;
};

/// Returns the updated monitor.
ThetaMonitor theta_update(ThetaMonitor monitor, double mu_k);

}  // namespace sgp
