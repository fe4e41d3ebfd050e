#include <random>

#include "doctest.h"
#include "sgp/errors.hpp"
#include "sgp/feasible_region.hpp"
#include "sgp/metric.hpp"
#include "sgp/projection.hpp"
#include "sgp/quadratic.hpp"
#include "support/oracles.hpp"

using sgp::DiagonalMetric;
using sgp::FeasibleRegion;
using sgp::Vector;
namespace st = sgp::testing;

TEST_SUITE("projection") {

TEST_CASE("feasible region validates and clamps") {
  CHECK_THROWS_AS(FeasibleRegion(Vector::Constant(2, 1.0), Vector::Zero(2)), sgp::InvalidInput);
  CHECK_THROWS_AS(FeasibleRegion(Vector::Zero(2), Vector::Zero(3)), sgp::InvalidInput);
  const auto box = FeasibleRegion::uniform(3, -1.0, 2.0);
  Vector x(3);
  x << -5.0, 0.5, 7.0;
  const Vector p = box.project(x);
  CHECK(p[0] == -1.0);
  CHECK(p[1] == 0.5);
  CHECK(p[2] == 2.0);
  CHECK(box.contains(p));
  CHECK_FALSE(box.contains(x));
  CHECK(FeasibleRegion::unbounded(3).contains(x));
  CHECK_FALSE(FeasibleRegion::nonnegative(3).contains(x));
}

TEST_CASE("scaled projection is a clamp of the scaled step") {
  const auto region = FeasibleRegion::nonnegative(1);
  Vector x(1), g(1);
  x << 1.0;
  g << 1.0;
  SUBCASE("active bound") {
    const Vector y = sgp::scaled_projection(x, g, 2.0, DiagonalMetric::identity(1), region);
    CHECK(y[0] == 0.0);
  }
  SUBCASE("metric shortens the step") {
    const DiagonalMetric d(Vector::Constant(1, 0.25), 4.0);
    const Vector y = sgp::scaled_projection(x, g, 2.0, d, region);
    CHECK(y[0] == doctest::Approx(0.5));
  }
}

TEST_CASE("scaled projection rejects bad inputs") {
  const auto region = FeasibleRegion::nonnegative(2);
  const Vector x = Vector::Ones(2);
  Vector g = Vector::Ones(2);
  const auto id = DiagonalMetric::identity(2);
  CHECK_THROWS_AS(sgp::scaled_projection(x, g, 0.0, id, region), sgp::ParameterError);
  CHECK_THROWS_AS(sgp::scaled_projection(x, g, -1.0, id, region), sgp::ParameterError);
  g[1] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(sgp::scaled_projection(x, g, 1.0, id, region), sgp::InvalidInput);
}

TEST_CASE("projection is idempotent at zero gradient") {
  std::mt19937_64 rng(3);
  const auto region = FeasibleRegion::uniform(6, -1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const Vector x = region.project(st::random_vector(rng, 6, -2.0, 2.0));
    const DiagonalMetric d(st::random_vector(rng, 6, 0.5, 2.0), 2.0);
    const Vector y = sgp::scaled_projection(x, Vector::Zero(6), 3.0, d, region);
    CHECK(y == x);
  }
}

TEST_CASE("descent direction examples") {
  const auto region = FeasibleRegion::nonnegative(1);
  Vector x(1), g(1);
  x << 1.0;
  g << 1.0;
  const auto dir = sgp::descent_direction(x, g, 1.0, DiagonalMetric::identity(1), region);
  CHECK(dir.y[0] == 0.0);
  CHECK(dir.d[0] == -1.0);
  CHECK(dir.directional == -1.0);
  CHECK(dir.directional <= -dir.d.squaredNorm() / 1.0);

  const auto interior = FeasibleRegion::unbounded(3);
  const auto still = sgp::descent_direction(Vector::Ones(3), Vector::Zero(3), 1.0,
                                            DiagonalMetric::identity(3), interior);
  CHECK(still.d.isZero(0.0));
  CHECK(still.directional == 0.0);
}

TEST_CASE("descent certificate holds on random draws") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> la(-5.0, 5.0);
  const auto region = FeasibleRegion::uniform(5, -1.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const double mu = std::pow(10.0, std::abs(la(rng)));
    Vector diag(5);
    for (int i = 0; i < 5; ++i) diag[i] = std::pow(mu, la(rng) / 5.0);
    const DiagonalMetric d(diag, mu);
    const double alpha = std::pow(10.0, la(rng));
    const Vector x = region.project(st::random_vector(rng, 5, -1.5, 1.5));
    const Vector g = st::random_vector(rng, 5, -3.0, 3.0);
    const auto dir = sgp::descent_direction(x, g, alpha, d, region);
    CHECK(dir.directional - (-d.inverse_norm_squared(dir.d) / alpha) <= 1e-12);
  }
}

TEST_CASE("stationarity residual") {
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(2, 2);
  Vector c(2);
  c << 0.5, -1.0;
  const sgp::Quadratic q(h, c);
  SUBCASE("interior minimizer") {
    Vector x(2);
    x << 0.5, -1.0;
    CHECK(sgp::stationarity_residual(x, q, FeasibleRegion::unbounded(2)) == 0.0);
  }
  SUBCASE("active bound with inward gradient") {
    Vector x(2);
    x << 0.5, 0.0;
    CHECK(sgp::stationarity_residual(x, q, FeasibleRegion::nonnegative(2)) == 0.0);
  }
  SUBCASE("sign agrees with vertex enumeration on small boxes") {
    std::mt19937_64 rng(5);
    const auto box = FeasibleRegion::uniform(2, -1.0, 1.0);
    for (int t = 0; t < 50; ++t) {
      const Vector x = st::random_vector(rng, 2, -1.0, 1.0);
      Vector g;
      q.gradient(x, g);
      const double r = sgp::stationarity_residual(x, q, box);
      const double m = st::box_linear_minimum(g, x, box.lower(), box.upper());
      CHECK((r > 0.0) == (m < 0.0));
    }
  }
}

}  // TEST_SUITE
