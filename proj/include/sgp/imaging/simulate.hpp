#pragma once

#include <cstdint>
#include <memory>
#include <random>

#include "sgp/imaging/blur.hpp"
#include "sgp/imaging/poisson.hpp"

namespace sgp::imaging {

/// Modified Shepp-Logan head phantom (piecewise constant ellipses), values in [0, 1].
Image shepp_logan_phantom(ImageShape shape);

/// Seeded Poisson sampler, reproducible across platforms.
///
/// Inversion by sequential search for mean < 30, Hormann's transformed
/// rejection with squeeze (PTRS) above.
class PoissonSampler {
 public:
  explicit PoissonSampler(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t operator()(double mean);
  /// Uniform double in [0, 1) from the top 53 bits of one engine draw.
  double uniform();

 private:
  std::uint64_t inversion(double mean);
  std::uint64_t ptrs(double mean);

  std::mt19937_64 engine_;
};

struct SimulationOptions {
  double background = 10.0;
  double scale = 1.0;   ///< multiplies object and background before blurring
  std::uint64_t seed = 1;
  bool noise = true;    ///< false: g = A x* + b exactly
};

struct SimulatedProblem {
  std::shared_ptr<const PoissonModel> model;
  Image truth;  ///< the scaled object x*
};

/// g_i ~ Poisson((A x*)_i + b) with x* = scale * truth and b = scale * background.
SimulatedProblem simulate_problem(const Image& truth, std::shared_ptr<const BlurOperator> op,
                                  const SimulationOptions& options);

}  // namespace sgp::imaging
