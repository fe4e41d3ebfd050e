#include "sgp/imaging/simulate.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "sgp/errors.hpp"

namespace sgp::imaging {

namespace {

struct Ellipse {
  double intensity, semi_x, semi_y, center_x, center_y, angle_deg;
};

// Toft's modified Shepp-Logan parameters.
constexpr std::array<Ellipse, 10> kSheppLogan{{
    {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
    {-0.8, 0.6624, 0.874, 0.0, -0.0184, 0.0},
    {-0.2, 0.11, 0.31, 0.22, 0.0, -18.0},
    {-0.2, 0.16, 0.41, -0.22, 0.0, 18.0},
    {0.1, 0.21, 0.25, 0.0, 0.35, 0.0},
    {0.1, 0.046, 0.046, 0.0, 0.1, 0.0},
    {0.1, 0.046, 0.046, 0.0, -0.1, 0.0},
    {0.1, 0.046, 0.023, -0.08, -0.605, 0.0},
    {0.1, 0.023, 0.023, 0.0, -0.606, 0.0},
    {0.1, 0.023, 0.046, 0.06, -0.605, 0.0},
}};

}  // namespace

Image shepp_logan_phantom(ImageShape shape) {
  if (shape.size() == 0) throw InvalidInput("phantom: empty shape");
  Image img = Image::zeros(shape);
  for (std::size_t r = 0; r < shape.rows; ++r) {
    // pixel centers on [-1, 1], y pointing up
    const double y = 1.0 - (2.0 * static_cast<double>(r) + 1.0) / static_cast<double>(shape.rows);
    for (std::size_t c = 0; c < shape.cols; ++c) {
      const double x = (2.0 * static_cast<double>(c) + 1.0) / static_cast<double>(shape.cols) - 1.0;
      double v = 0.0;
      for (const Ellipse& e : kSheppLogan) {
        const double phi = e.angle_deg * std::numbers::pi / 180.0;
        const double dx = x - e.center_x;
        const double dy = y - e.center_y;
        const double u = dx * std::cos(phi) + dy * std::sin(phi);
        const double w = -dx * std::sin(phi) + dy * std::cos(phi);
        if ((u * u) / (e.semi_x * e.semi_x) + (w * w) / (e.semi_y * e.semi_y) <= 1.0) {
          v += e.intensity;
        }
      }
      img.at(r, c) = std::max(v, 0.0);
    }
  }
  return img;
}

double PoissonSampler::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t PoissonSampler::operator()(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw InvalidInput("PoissonSampler: mean must be finite and nonnegative");
  }
  if (mean == 0.0) return 0;
  return mean < 30.0 ? inversion(mean) : ptrs(mean);
}

std::uint64_t PoissonSampler::inversion(double mean) {
  const double u = uniform();
  double p = std::exp(-mean);
  double cdf = p;
  std::uint64_t k = 0;
  // The tail beyond 1000 has negligible mass for mean < 30.
  while (u > cdf && k < 1000) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

std::uint64_t PoissonSampler::ptrs(double mean) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  while (true) {
    const double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

SimulatedProblem simulate_problem(const Image& truth, std::shared_ptr<const BlurOperator> op,
                                  const SimulationOptions& options) {
  if (!op) throw InvalidInput("simulate_problem: missing operator");
  if (!(truth.shape == op->shape())) throw InvalidInput("simulate_problem: shape mismatch");
  if ((truth.pixels.array() < 0.0).any()) {
    throw InvalidInput("simulate_problem: ground truth must be nonnegative");
  }
  if (!(options.scale > 0.0) || !(options.background >= 0.0)) {
    throw ParameterError("simulate_problem: scale must be positive, background nonnegative");
  }
  SimulatedProblem out;
  out.truth = Image(truth.shape, options.scale * truth.pixels);
  const double b = options.scale * options.background;
  Vector mean = op->apply(out.truth.pixels).array() + b;
  // FFT round-off can leave tiny negative values where the object vanishes.
  mean = mean.cwiseMax(0.0);
  Vector g = mean;
  if (options.noise) {
    PoissonSampler sampler(options.seed);
    for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = static_cast<double>(sampler(mean[i]));
  }
  out.model = std::make_shared<PoissonModel>(std::move(op), std::move(g), b);
  return out;
}

}  // namespace sgp::imaging
