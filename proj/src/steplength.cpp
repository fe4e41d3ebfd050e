#include "sgp/steplength.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sgp/errors.hpp"

namespace sgp {

void SteplengthConfig::validate() const {
  if (!(alpha_min > 0.0 && alpha_min <= alpha_max && std::isfinite(alpha_max))) {
    throw ParameterError("steplength: need 0 < alpha_min <= alpha_max < inf");
  }
  if (!(alpha0 > 0.0)) throw ParameterError("steplength: alpha0 must be positive");
  if (memory < 1) throw ParameterError("steplength: BB2 memory must be >= 1");
  if (!(tau0 > 0.0 && tau0 < 1.0)) throw ParameterError("steplength: tau0 must lie in (0,1)");
  if (!(tau_shrink > 0.0 && tau_grow > 0.0)) {
    throw ParameterError("steplength: tau multipliers must be positive");
  }
}

BBPair bb_steplengths(const Vector& s, const Vector& z, const DiagonalMetric& metric,
                      double alpha_max) {
  if (s.size() != z.size() || static_cast<Eigen::Index>(metric.dimension()) != s.size()) {
    throw InvalidInput("bb_steplengths: dimension mismatch");
  }
  if (s.isZero(0.0)) throw InvalidInput("bb_steplengths: degenerate history (s = 0)");

  const auto dd = metric.diag().array();
  const auto sa = s.array();
  const auto za = z.array();

  BBPair out{alpha_max, alpha_max};
  const double den1 = (sa * za / dd).sum();
  if (den1 > 0.0) out.bb1 = (sa.square() / dd.square()).sum() / den1;
  const double num2 = (sa * dd * za).sum();
  const double den2 = (za.square() * dd.square()).sum();
  if (num2 > 0.0 && den2 > 0.0) out.bb2 = num2 / den2;
  return out;
}

double BBAlternation::choose(const BBPair& values) {
  window_.push_back(values.bb2);
  while (window_.size() > config_.memory) window_.pop_front();
  if (values.bb2 / values.bb1 <= tau_) {
    tau_ *= config_.tau_shrink;
    return *std::min_element(window_.begin(), window_.end());
  }
  tau_ *= config_.tau_grow;
  return values.bb1;
}

ConstantSteplength::ConstantSteplength(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ParameterError("constant steplength must be positive and finite");
  }
}

std::unique_ptr<SteplengthRule> ConstantSteplength::clone() const {
  return std::make_unique<ConstantSteplength>(alpha_);
}

std::string ConstantSteplength::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "constant:" << alpha_;
  return os.str();
}

BBSteplength::BBSteplength(SteplengthConfig config) : config_(config), alternation_(config) {
  config_.validate();
}

void BBSteplength::reset() {
  alternation_ = BBAlternation(config_);
  prev_x_.reset();
  prev_grad_.reset();
  prev_alpha_ = 0.0;
}

double BBSteplength::next(const Vector& x, const Vector& grad, const DiagonalMetric& metric) {
  const auto clamp = [this](double a) { return std::clamp(a, config_.alpha_min, config_.alpha_max); };
  double alpha = 0.0;
  if (!prev_x_) {
    alpha = clamp(config_.alpha0);
  } else {
    const Vector s = x - *prev_x_;
    const Vector z = grad - *prev_grad_;
    if (s.isZero(0.0)) {
      alpha = prev_alpha_;
    } else {
      BBPair p = bb_steplengths(s, z, metric, config_.alpha_max);
      p.bb1 = clamp(p.bb1);
      p.bb2 = clamp(p.bb2);
      alpha = clamp(alternation_.choose(p));
    }
  }
  prev_x_ = x;
  prev_grad_ = grad;
  prev_alpha_ = alpha;
  return alpha;
}

std::unique_ptr<SteplengthRule> BBSteplength::clone() const {
  return std::make_unique<BBSteplength>(config_);
}

std::unique_ptr<SteplengthRule> parse_steplength(const std::string& spec,
                                                 const SteplengthConfig& config) {
  if (spec == "bb") return std::make_unique<BBSteplength>(config);
  const std::string prefix = "constant:";
  if (spec.rfind(prefix, 0) == 0) {
    const std::string arg = spec.substr(prefix.size());
    try {
      std::size_t used = 0;
      const double a = std::stod(arg, &used);
      if (used == arg.size()) return std::make_unique<ConstantSteplength>(a);
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
    throw ParameterError("steplength: bad constant '" + arg + "'");
  }
  throw ParameterError("steplength must be bb | constant:<a>, got '" + spec + "'");
}

}  // namespace sgp
