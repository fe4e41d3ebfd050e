#pragma once

#include <memory>
#include <vector>
#include <complex>

#include <Eigen/Dense>

#include "sgp/imaging/image.hpp"

namespace sgp::imaging {

/// Normalized Gaussian kernel of the given variance on a size x size grid (size odd).
Image gaussian_psf(double variance, std::size_t size);

/// Rescales a nonnegative kernel so that its entries sum to one.
Image normalize_psf(Image psf);

/// Periodic 2-D convolution A with a normalized kernel (A e = e, A^T e = e).
///
/// The kernel center (rows/2, cols/2) maps to the origin; kernels larger
/// than the image wrap around. Implementations are immutable and safe to
/// share across threads.
class BlurOperator {
 public:
  virtual ~BlurOperator() = default;
  virtual ImageShape shape() const = 0;
  virtual Vector apply(const Vector& x) const = 0;
  virtual Vector apply_adjoint(const Vector& x) const = 0;
};

/// O(n log n) products through the discrete Fourier transform.
class FftBlurOperator final : public BlurOperator {
 public:
  FftBlurOperator(ImageShape shape, const Image& psf);
  ~FftBlurOperator() override;
  FftBlurOperator(const FftBlurOperator&) = delete;
  FftBlurOperator& operator=(const FftBlurOperator&) = delete;

  ImageShape shape() const override { return shape_; }
  Vector apply(const Vector& x) const override;
  Vector apply_adjoint(const Vector& x) const override;

 private:
  Vector convolve(const Vector& x, bool adjoint) const;

  ImageShape shape_;
  std::vector<std::complex<double>> transfer_;  // rows x (cols/2+1)
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

/// Explicit n x n matrix; only meant for small images (oracle use).
class DenseBlurOperator final : public BlurOperator {
 public:
  static constexpr std::size_t kMaxPixels = 1024;

  DenseBlurOperator(ImageShape shape, const Image& psf);

  ImageShape shape() const override { return shape_; }
  Vector apply(const Vector& x) const override { return matrix_ * x; }
  Vector apply_adjoint(const Vector& x) const override { return matrix_.transpose() * x; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

 private:
  ImageShape shape_;
  Eigen::MatrixXd matrix_;
};

/// The kernel wrapped onto the image grid with its center at pixel (0, 0).
Image embed_psf(ImageShape shape, const Image& psf);

}  // namespace sgp::imaging
