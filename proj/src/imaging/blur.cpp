#include "sgp/imaging/blur.hpp"

#include <cmath>
#include <mutex>

#include <fftw3.h>

#include "sgp/errors.hpp"

namespace sgp::imaging {

namespace {

// The FFTW planner is not thread safe; plan execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t bytes) : ptr(fftw_malloc(bytes)) {
    if (ptr == nullptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(ptr); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  void* ptr;
};

std::size_t wrap(std::ptrdiff_t i, std::size_t n) {
  const auto m = static_cast<std::ptrdiff_t>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

void check_shape(ImageShape shape) {
  if (shape.rows == 0 || shape.cols == 0) throw InvalidInput("blur: empty image shape");
}

}  // namespace

Image gaussian_psf(double variance, std::size_t size) {
  if (!(variance > 0.0)) throw ParameterError("gaussian_psf: variance must be positive");
  if (size == 0 || size % 2 == 0) throw ParameterError("gaussian_psf: size must be odd");
  Image psf = Image::zeros({size, size});
  const double center = static_cast<double>(size / 2);
  for (std::size_t r = 0; r < size; ++r) {
    for (std::size_t c = 0; c < size; ++c) {
      const double dr = static_cast<double>(r) - center;
      const double dc = static_cast<double>(c) - center;
      psf.at(r, c) = std::exp(-(dr * dr + dc * dc) / (2.0 * variance));
    }
  }
  return normalize_psf(std::move(psf));
}

Image normalize_psf(Image psf) {
  if ((psf.pixels.array() < 0.0).any() || !psf.pixels.allFinite()) {
    throw InvalidInput("psf entries must be finite and nonnegative");
  }
  const double total = psf.pixels.sum();
  if (!(total > 0.0)) throw InvalidInput("psf has zero mass");
  psf.pixels /= total;
  return psf;
}

Image embed_psf(ImageShape shape, const Image& psf) {
  check_shape(shape);
  Image out = Image::zeros(shape);
  const auto cr = static_cast<std::ptrdiff_t>(psf.shape.rows / 2);
  const auto cc = static_cast<std::ptrdiff_t>(psf.shape.cols / 2);
  for (std::size_t r = 0; r < psf.shape.rows; ++r) {
    for (std::size_t c = 0; c < psf.shape.cols; ++c) {
      out.at(wrap(static_cast<std::ptrdiff_t>(r) - cr, shape.rows),
             wrap(static_cast<std::ptrdiff_t>(c) - cc, shape.cols)) += psf.at(r, c);
    }
  }
  return out;
}

FftBlurOperator::FftBlurOperator(ImageShape shape, const Image& psf) : shape_(shape) {
  check_shape(shape);
  const Image kernel = embed_psf(shape, psf);
  const std::size_t n = shape.size();
  const std::size_t half = shape.rows * (shape.cols / 2 + 1);
  const int rows = static_cast<int>(shape.rows);
  const int cols = static_cast<int>(shape.cols);

  FftwBuffer real(sizeof(double) * n);
  FftwBuffer spec(sizeof(fftw_complex) * half);
  auto* in = static_cast<double*>(real.ptr);
  auto* out = static_cast<fftw_complex*>(spec.ptr);
  {
    std::lock_guard lock(planner_mutex());
    forward_plan_ = fftw_plan_dft_r2c_2d(rows, cols, in, out, FFTW_ESTIMATE);
    inverse_plan_ = fftw_plan_dft_c2r_2d(rows, cols, out, in, FFTW_ESTIMATE);
  }
  if (forward_plan_ == nullptr || inverse_plan_ == nullptr) {
    throw Error("FftBlurOperator: FFTW planning failed");
  }
  std::copy(kernel.pixels.data(), kernel.pixels.data() + n, in);
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), in, out);
  transfer_.resize(half);
  for (std::size_t i = 0; i < half; ++i) transfer_[i] = {out[i][0], out[i][1]};
}

FftBlurOperator::~FftBlurOperator() {
  std::lock_guard lock(planner_mutex());
  if (forward_plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  if (inverse_plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

Vector FftBlurOperator::convolve(const Vector& x, bool adjoint) const {
  const std::size_t n = shape_.size();
  if (static_cast<std::size_t>(x.size()) != n) throw InvalidInput("blur: image size mismatch");
  const std::size_t half = transfer_.size();

  FftwBuffer real(sizeof(double) * n);
  FftwBuffer spec(sizeof(fftw_complex) * half);
  auto* in = static_cast<double*>(real.ptr);
  auto* out = static_cast<fftw_complex*>(spec.ptr);
  std::copy(x.data(), x.data() + n, in);
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), in, out);
  for (std::size_t i = 0; i < half; ++i) {
    const std::complex<double> h = adjoint ? std::conj(transfer_[i]) : transfer_[i];
    const std::complex<double> v = std::complex<double>(out[i][0], out[i][1]) * h;
    out[i][0] = v.real();
    out[i][1] = v.imag();
  }
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_), out, in);
  Vector y(static_cast<Eigen::Index>(n));
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) y[static_cast<Eigen::Index>(i)] = in[i] * scale;
  return y;
}

Vector FftBlurOperator::apply(const Vector& x) const { return convolve(x, false); }

Vector FftBlurOperator::apply_adjoint(const Vector& x) const { return convolve(x, true); }

DenseBlurOperator::DenseBlurOperator(ImageShape shape, const Image& psf) : shape_(shape) {
  check_shape(shape);
  if (shape.size() > kMaxPixels) {
    throw ParameterError("DenseBlurOperator: image too large for an explicit matrix");
  }
  const Image kernel = embed_psf(shape, psf);
  const auto n = static_cast<Eigen::Index>(shape.size());
  matrix_ = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t r = 0; r < shape.rows; ++r) {
    for (std::size_t c = 0; c < shape.cols; ++c) {
      for (std::size_t r2 = 0; r2 < shape.rows; ++r2) {
        for (std::size_t c2 = 0; c2 < shape.cols; ++c2) {
          const std::size_t dr = wrap(static_cast<std::ptrdiff_t>(r) - static_cast<std::ptrdiff_t>(r2), shape.rows);
          const std::size_t dc = wrap(static_cast<std::ptrdiff_t>(c) - static_cast<std::ptrdiff_t>(c2), shape.cols);
          matrix_(static_cast<Eigen::Index>(shape.index(r, c)),
                  static_cast<Eigen::Index>(shape.index(r2, c2))) = kernel.at(dr, dc);
        }
      }
    }
  }
}

}  // namespace sgp::imaging
