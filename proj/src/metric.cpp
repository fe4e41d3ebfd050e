#include "sgp/metric.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sgp/errors.hpp"

namespace sgp {

DiagonalMetric DiagonalMetric::identity(std::size_t n) {
  return DiagonalMetric(Vector::Ones(static_cast<Eigen::Index>(n)), 1.0);
}

DiagonalMetric::DiagonalMetric(Vector diag, double mu) : diag_(std::move(diag)), mu_(mu) {
  if (!(mu_ >= 1.0) || !std::isfinite(mu_)) {
    throw InvalidInput("DiagonalMetric: mu must be finite and >= 1");
  }
  const double lo = 1.0 / mu_;
  for (Eigen::Index i = 0; i < diag_.size(); ++i) {
    if (!(diag_[i] >= lo && diag_[i] <= mu_)) {
      throw InvalidInput("DiagonalMetric: entry " + std::to_string(i) + " outside [1/mu, mu]");
    }
  }
}

double DiagonalMetric::norm_squared(const Vector& x) const {
  return (x.array().square() * diag_.array()).sum();
}

double DiagonalMetric::inverse_norm_squared(const Vector& x) const {
  return (x.array().square() / diag_.array()).sum();
}

DiagonalMetric clamp_to_metric(const Vector& values, double mu_k) {
  if (!(mu_k >= 1.0) || !std::isfinite(mu_k)) {
    throw ParameterError("clamp_to_metric: mu_k must be finite and >= 1");
  }
  if (!values.allFinite()) {
    throw InvalidInput("clamp_to_metric: non-finite scaling values");
  }
  const double lo = 1.0 / mu_k;
  return DiagonalMetric(values.cwiseMin(mu_k).cwiseMax(lo), mu_k);
}

BoundSchedule BoundSchedule::fixed(double mu) {
  if (!(mu >= 1.0) || !std::isfinite(mu)) throw ParameterError("fixed schedule needs mu >= 1");
  return BoundSchedule(Mode::kFixed, mu);
}

BoundSchedule BoundSchedule::summable(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw ParameterError("summable schedule needs c >= 0");
  return BoundSchedule(Mode::kSummable, c);
}

BoundSchedule BoundSchedule::custom(std::function<double(std::size_t)> zeta, std::string name) {
  if (!zeta) throw ParameterError("custom schedule needs a zeta sequence");
  BoundSchedule s(Mode::kCustom, 0.0);
  s.zeta_ = std::move(zeta);
  s.name_ = std::move(name);
  return s;
}

BoundSchedule BoundSchedule::parse(const std::string& spec) {
  if (spec == "identity") return identity();
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw ParameterError("metric schedule must be identity | fixed:<mu> | summable:<c>, got '" +
                         spec + "'");
  }
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(arg, &used);
    if (used != arg.size()) throw std::invalid_argument(arg);
  } catch (const std::exception&) {
    throw ParameterError("metric schedule: bad number '" + arg + "'");
  }
  if (kind == "fixed") return fixed(value);
  if (kind == "summable") return summable(value);
  throw ParameterError("metric schedule: unknown kind '" + kind + "'");
}

std::string BoundSchedule::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (mode_) {
    case Mode::kFixed:
      if (parameter_ == 1.0) return "identity";
      os << "fixed:" << parameter_;
      break;
    case Mode::kSummable:
      os << "summable:" << parameter_;
      break;
    case Mode::kCustom:
      os << name_;
      break;
  }
  return os.str();
}

double BoundSchedule::zeta_at(std::size_t k) const {
  if (k < 1) throw IndexError("bound schedule is indexed from k = 1");
  switch (mode_) {
    case Mode::kFixed:
      return (parameter_ - 1.0) * (parameter_ + 1.0);
    case Mode::kSummable: {
      const double kk = static_cast<double>(k);
      return parameter_ / (kk * kk);
    }
    case Mode::kCustom: {
      const double z = zeta_(k);
      if (!(z >= 0.0) || !std::isfinite(z)) {
        throw InvalidInput("custom schedule produced an invalid zeta at k = " + std::to_string(k));
      }
      return z;
    }
  }
  return 0.0;
}

double BoundSchedule::log_theta_bound() const {
  switch (mode_) {
    case Mode::kFixed:
      return parameter_ == 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
    case Mode::kSummable:
      // log(1 + z) <= z and sum 1/k^2 = pi^2/6
      return parameter_ * std::numbers::pi * std::numbers::pi / 6.0 * (1.0 + 1e-12) + 1e-15;
    case Mode::kCustom:
      return std::numeric_limits<double>::infinity();
  }
  return std::numeric_limits<double>::infinity();
}

double mu_at(const BoundSchedule& schedule, std::size_t k) {
  if (k < 1) throw IndexError("mu_at: k must be >= 1");
  if (schedule.mode() == BoundSchedule::Mode::kFixed) return schedule.parameter();
  return std::sqrt(1.0 + schedule.zeta_at(k));
}

void ThetaMonitor::update(double mu_k) {
  if (!(mu_k >= 1.0) || !std::isfinite(mu_k)) {
    throw ParameterError("ThetaMonitor: mu_k must be finite and >= 1");
  }
  ++steps_;
  log_theta_ += 2.0 * std::log(mu_k);
  const double zeta = (mu_k - 1.0) * (mu_k + 1.0);
  if (zeta > 0.0 && zeta >= last_zeta_) {
    ++stalled_;
  } else {
    stalled_ = 0;
  }
  last_zeta_ = zeta;
  if (flagged_) return;
  if (stalled_ >= patience_) {
    raise("bound schedule is not summable: zeta_k stopped decreasing");
  } else if (log_theta_ > log_bound_) {
    raise("theta_k exceeded its analytic bound");
  }
}

void ThetaMonitor::raise(std::string reason) {
  flagged_ = true;
  flagged_at_ = steps_;
  reason_ = std::move(reason);
}

ThetaMonitor theta_update(ThetaMonitor monitor, double mu_k) {
  monitor.update(mu_k);
  return monitor;
}

}  // namespace sgp
