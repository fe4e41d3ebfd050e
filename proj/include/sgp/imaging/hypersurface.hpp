#pragma once

#include "sgp/imaging/image.hpp"

namespace sgp::imaging {

/// Smoothed total variation
///   HS(x) = sum_i sqrt((D^h_i x)^2 + (D^v_i x)^2 + rho^2)
/// with periodic forward differences D^h_i x = x_{r,c+1} - x_{r,c},
/// D^v_i x = x_{r+1,c} - x_{r,c}.
class HSRegularizer {
 public:
  HSRegularizer(ImageShape shape, double rho);

  ImageShape shape() const { return shape_; }
  double rho() const { return rho_; }

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;

 private:
  ImageShape shape_;
  double rho_;
};

double hs_value(const HSRegularizer& reg, const Vector& x);
Vector hs_gradient(const HSRegularizer& reg, const Vector& x);

/// Nonnegative split of the HS gradient, grad HS = V - U.
struct GradientSplit {
  Vector V;  ///< terms carrying x_i as a factor
  Vector U;  ///< neighbour terms
};

/// V_i = x_i (2/den_i + 1/den_{i-h} + 1/den_{i-v}),
/// U_i = (x_{i+h} + x_{i+v})/den_i + x_{i-h}/den_{i-h} + x_{i-v}/den_{i-v},
/// where den_j is the HS summand at pixel j. Throws DomainError for negative x.
GradientSplit split_gradient(const HSRegularizer& reg, const Vector& x);

}  // namespace sgp::imaging
