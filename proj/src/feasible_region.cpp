#include "sgp/feasible_region.hpp"

#include <cmath>
#include <limits>

#include "sgp/errors.hpp"

namespace sgp {

FeasibleRegion::FeasibleRegion(Vector lower, Vector upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size()) {
    throw InvalidInput("FeasibleRegion: bound vectors differ in length");
  }
  for (Eigen::Index i = 0; i < lower_.size(); ++i) {
    if (std::isnan(lower_[i]) || std::isnan(upper_[i]) || !(lower_[i] <= upper_[i]) ||
        lower_[i] == std::numeric_limits<double>::infinity() ||
        upper_[i] == -std::numeric_limits<double>::infinity()) {
      throw InvalidInput("FeasibleRegion: empty interval at coordinate " + std::to_string(i));
    }
  }
}

FeasibleRegion FeasibleRegion::nonnegative(std::size_t n) {
  return uniform(n, 0.0, std::numeric_limits<double>::infinity());
}

FeasibleRegion FeasibleRegion::unbounded(std::size_t n) {
  const double inf = std::numeric_limits<double>::infinity();
  return uniform(n, -inf, inf);
}

FeasibleRegion FeasibleRegion::uniform(std::size_t n, double lo, double hi) {
  const auto m = static_cast<Eigen::Index>(n);
  return FeasibleRegion(Vector::Constant(m, lo), Vector::Constant(m, hi));
}

bool FeasibleRegion::contains(const Vector& x) const {
  if (x.size() != lower_.size()) return false;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lower_[i] && x[i] <= upper_[i])) return false;
  }
  return true;
}

Vector FeasibleRegion::project(const Vector& x) const {
  return x.cwiseMax(lower_).cwiseMin(upper_);
}

}  // namespace sgp
