#include "sgp/imaging/hypersurface.hpp"

#include <cmath>

#include "sgp/errors.hpp"

namespace sgp::imaging {

namespace {

struct Neighbours {
  std::size_t right, down, left, up;
};

Neighbours neighbours(ImageShape s, std::size_t r, std::size_t c) {
  const std::size_t rp = (r + 1) % s.rows;
  const std::size_t cp = (c + 1) % s.cols;
  const std::size_t rm = (r + s.rows - 1) % s.rows;
  const std::size_t cm = (c + s.cols - 1) % s.cols;
  return {s.index(r, cp), s.index(rp, c), s.index(r, cm), s.index(rm, c)};
}

void check_size(const HSRegularizer& reg, const Vector& x) {
  if (static_cast<std::size_t>(x.size()) != reg.shape().size()) {
    throw InvalidInput("HS: image size mismatch");
  }
}

// den_i = sqrt((D^h_i x)^2 + (D^v_i x)^2 + rho^2)
Vector denominators(const HSRegularizer& reg, const Vector& x) {
  const ImageShape s = reg.shape();
  const double rho2 = reg.rho() * reg.rho();
  Vector den(x.size());
  for (std::size_t r = 0; r < s.rows; ++r) {
    for (std::size_t c = 0; c < s.cols; ++c) {
      const std::size_t i = s.index(r, c);
      const Neighbours nb = neighbours(s, r, c);
      const double dh = x[static_cast<Eigen::Index>(nb.right)] - x[static_cast<Eigen::Index>(i)];
      const double dv = x[static_cast<Eigen::Index>(nb.down)] - x[static_cast<Eigen::Index>(i)];
      den[static_cast<Eigen::Index>(i)] = std::sqrt(dh * dh + dv * dv + rho2);
    }
  }
  return den;
}

}  // namespace

HSRegularizer::HSRegularizer(ImageShape shape, double rho) : shape_(shape), rho_(rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw ParameterError("HS: rho must be positive");
  if (shape.size() == 0) throw InvalidInput("HS: empty image shape");
}

double HSRegularizer::value(const Vector& x) const {
  check_size(*this, x);
  return denominators(*this, x).sum();
}

Vector HSRegularizer::gradient(const Vector& x) const {
  check_size(*this, x);
  const Vector den = denominators(*this, x);
  Vector grad = Vector::Zero(x.size());
  for (std::size_t r = 0; r < shape_.rows; ++r) {
    for (std::size_t c = 0; c < shape_.cols; ++c) {
      const auto i = static_cast<Eigen::Index>(shape_.index(r, c));
      const Neighbours nb = neighbours(shape_, r, c);
      const auto right = static_cast<Eigen::Index>(nb.right);
      const auto down = static_cast<Eigen::Index>(nb.down);
      const double dh = (x[right] - x[i]) / den[i];
      const double dv = (x[down] - x[i]) / den[i];
      grad[i] -= dh + dv;
      grad[right] += dh;
      grad[down] += dv;
    }
  }
  return grad;
}

double hs_value(const HSRegularizer& reg, const Vector& x) { return reg.value(x); }

Vector hs_gradient(const HSRegularizer& reg, const Vector& x) { return reg.gradient(x); }

GradientSplit split_gradient(const HSRegularizer& reg, const Vector& x) {
  check_size(reg, x);
  if ((x.array() < 0.0).any()) throw DomainError("split_gradient: negative intensities");
  const ImageShape s = reg.shape();
  const Vector den = denominators(reg, x);
  GradientSplit out{Vector(x.size()), Vector(x.size())};
  for (std::size_t r = 0; r < s.rows; ++r) {
    for (std::size_t c = 0; c < s.cols; ++c) {
      const auto i = static_cast<Eigen::Index>(s.index(r, c));
      const Neighbours nb = neighbours(s, r, c);
      const auto right = static_cast<Eigen::Index>(nb.right);
      const auto down = static_cast<Eigen::Index>(nb.down);
      const auto left = static_cast<Eigen::Index>(nb.left);
      const auto up = static_cast<Eigen::Index>(nb.up);
      out.V[i] = x[i] * (2.0 / den[i] + 1.0 / den[left] + 1.0 / den[up]);
      out.U[i] = (x[right] + x[down]) / den[i] + x[left] / den[left] + x[up] / den[up];
    }
  }
  return out;
}

}  // namespace sgp::imaging
