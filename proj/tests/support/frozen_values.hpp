#pragma once

// Reference values computed offline by tools/oracles/freeze_values.py
// (mpmath at 40 digits, sympy exact rationals).

namespace sgp::testing::frozen {

// sum_{j=1}^{10^6} log(1 + c / j^2)
inline constexpr double kLogThetaSeriesC1 = 1.3018453986042126778;
inline constexpr double kLogThetaSeriesC1e4 = 307.70621811159855197;
inline constexpr double kLogThetaSeriesC1e10 = 304162.51988654739806;

// 2 ln 2 - 1
inline constexpr double kKlTwoLogTwoMinusOne = 0.38629436111989061883;

// Nonnegative QP with H = [[4,1,0,1/2],[1,3,-1/2,0],[0,-1/2,2,1/4],[1/2,0,1/4,1]],
// c = (1,-2,3/2,-1/2): minimizer and minimum of 1/2 x^T H x - c^T x.
inline constexpr double kQp4Minimizer[4] = {0.25, 0.0, 0.75, 0.0};
inline constexpr double kQp4Minimum = -0.6875;

}  // namespace sgp::testing::frozen
