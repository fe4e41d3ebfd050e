#pragma once

#include <cstddef>

#include "sgp/types.hpp"

namespace sgp {

/// Box constraint set { x : lower <= x <= upper }. Infinite bounds are allowed.
class FeasibleRegion {
 public:
  FeasibleRegion(Vector lower, Vector upper);

  /// The nonnegative orthant of dimension n.
  static FeasibleRegion nonnegative(std::size_t n);
  /// All of R^n.
  static FeasibleRegion unbounded(std::size_t n);
  /// The box [lo, hi]^n.
  static FeasibleRegion uniform(std::size_t n, double lo, double hi);

  std::size_t dimension() const { return static_cast<std::size_t>(lower_.size()); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }

  bool contains(const Vector& x) const;

  /// Euclidean projection, i.e. the componentwise clamp.
  Vector project(const Vector& x) const;

 private:
  Vector lower_;
  Vector upper_;
};

}  // namespace sgp
