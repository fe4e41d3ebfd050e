#pragma once

// Brute-force reference computations used by the tests. Nothing here calls
// into the solver library.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

namespace sgp::testing {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline Vec random_vector(std::mt19937_64& rng, Eigen::Index n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

/// Q diag(eigs) Q^T with Q from a QR of a Gaussian matrix and eigs log-spaced in [lmin, lmax].
inline Mat random_spd(std::mt19937_64& rng, Eigen::Index n, double lmin, double lmax) {
  std::normal_distribution<double> g;
  Mat a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = g(rng);
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  Vec eig(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
    eig[i] = lmin * std::pow(lmax / lmin, t);
  }
  Mat h = q * eig.asDiagonal() * q.transpose();
  return 0.5 * (h + h.transpose());
}

/// Minimizer of 1/2 x^T H x - c^T x subject to x >= lower, by enumerating
/// all 2^n active sets and keeping the one satisfying the KKT conditions.
inline std::optional<Vec> kkt_enumerate(const Mat& h, const Vec& c, const Vec& lower,
                                        double tol = 1e-12) {
  const auto n = h.rows();
  const std::uint64_t patterns = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    std::vector<Eigen::Index> free, active;
    for (Eigen::Index i = 0; i < n; ++i) {
      ((mask >> i) & 1U) ? active.push_back(i) : free.push_back(i);
    }
    Vec x = Vec::Zero(n);
    for (auto i : active) x[i] = lower[i];
    if (!free.empty()) {
      const auto nf = static_cast<Eigen::Index>(free.size());
      Mat hff(nf, nf);
      Vec rhs(nf);
      for (Eigen::Index a = 0; a < nf; ++a) {
        rhs[a] = c[free[a]];
        for (auto j : active) rhs[a] -= h(free[a], j) * lower[j];
        for (Eigen::Index b = 0; b < nf; ++b) hff(a, b) = h(free[a], free[b]);
      }
      const Vec xf = hff.llt().solve(rhs);
      for (Eigen::Index a = 0; a < nf; ++a) x[free[a]] = xf[a];
    }
    bool ok = true;
    for (auto i : free) ok = ok && x[i] >= lower[i] - tol;
    const Vec grad = h * x - c;
    for (auto i : active) ok = ok && grad[i] >= -tol;
    if (ok) return x;
  }
  return std::nullopt;
}

/// Central differences with h_i = rel * (1 + |x_i|).
inline Vec central_difference(const std::function<double(const Vec&)>& f, const Vec& x,
                              double rel = 1e-5) {
  Vec g(x.size());
  Vec xp = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = rel * (1.0 + std::abs(x[i]));
    xp[i] = x[i] + h;
    const double fp = f(xp);
    xp[i] = x[i] - h;
    const double fm = f(xp);
    xp[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

/// sum_{j=1}^{terms} log(1 + c / j^2), accumulated from the smallest term up.
inline double log_theta_series(double c, std::size_t terms) {
  double s = 0.0;
  for (std::size_t j = terms; j >= 1; --j) {
    const double jj = static_cast<double>(j);
    s += std::log1p(c / (jj * jj));
  }
  return s;
}

/// min over the box of grad^T (y - x), attained at a vertex chosen per coordinate.
inline double box_linear_minimum(const Vec& grad, const Vec& x, const Vec& lo, const Vec& hi) {
  double v = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double target = grad[i] > 0.0 ? lo[i] : (grad[i] < 0.0 ? hi[i] : x[i]);
    v += grad[i] * (target - x[i]);
  }
  return v;
}

/// Direct periodic convolution: (k * x)_{r,c} = sum_{a,b} k_{a,b} x_{r-a+ca, c-b+cb}
/// with the kernel center (ca, cb) at offset zero.
inline Vec periodic_convolve(const Vec& x, std::size_t rows, std::size_t cols, const Vec& kernel,
                             std::size_t krows, std::size_t kcols) {
  Vec out = Vec::Zero(x.size());
  const long ca = static_cast<long>(krows / 2), cb = static_cast<long>(kcols / 2);
  const long R = static_cast<long>(rows), C = static_cast<long>(cols);
  for (long r = 0; r < R; ++r)
    for (long c = 0; c < C; ++c) {
      double s = 0.0;
      for (long a = 0; a < static_cast<long>(krows); ++a)
        for (long b = 0; b < static_cast<long>(kcols); ++b) {
          const long rr = ((r - (a - ca)) % R + R) % R;
          const long cc = ((c - (b - cb)) % C + C) % C;
          s += kernel[a * static_cast<long>(kcols) + b] * x[rr * C + cc];
        }
      out[r * C + c] = s;
    }
  return out;
}

}  // namespace sgp::testing
