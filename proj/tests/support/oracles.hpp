#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "torusfield/kacrice.hpp"
#include "torusfield/rng.hpp"

namespace torusfield::testing {

// Independent K2: condition (f'(t1), f'(t2)) on f(t1) = f(t2) = 0 through the
// Schur complement of the 4x4 covariance, then integrate E|XY| numerically.
inline double folded_mean(double a, double s) {
  // E|a + s Z| for Z standard normal.
  return s * std::sqrt(2.0 / kPi) * std::exp(-a * a / (2 * s * s)) + a * std::erf(a / (s * std::sqrt(2.0)));
}

inline double abs_product_mean(double s1, double s2, double rho) {
  const double s = std::sqrt(1.0 - rho * rho);
  auto g = [&](double z) { return z * std::exp(-z * z / 2) / std::sqrt(kTwoPi) * folded_mean(rho * z, s); };
  // The Gaussian factor is below 1e-31 past z = 12.
  return 2.0 * s1 * s2 * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, 12.0, 10, 1e-14);
}

inline double oracle_k2(const CovarianceJet& j, double alpha) {
  Eigen::Matrix4d c;
  // Order: f(t1), f(t2), f'(t1), f'(t2).
  c << 1, j.r, 0, j.r2,
       j.r, 1, j.r1, 0,
       0, j.r1, alpha, j.r12,
       j.r2, 0, j.r12, alpha;
  const Eigen::Matrix2d a = c.topLeftCorner<2, 2>();
  const Eigen::Matrix2d b = c.bottomRightCorner<2, 2>();
  const Eigen::Matrix2d x = c.bottomLeftCorner<2, 2>();
  const Eigen::Matrix2d omega = b - x * a.inverse() * x.transpose();
  const double s1 = std::sqrt(std::max(omega(0, 0), 0.0)), s2 = std::sqrt(std::max(omega(1, 1), 0.0));
  const double density = 1.0 / (kTwoPi * std::sqrt(a.determinant()));
  if (s1 == 0.0 || s2 == 0.0) return 0.0;
  const double rho = std::clamp(omega(0, 1) / (s1 * s2), -1.0, 1.0);
  return density * abs_product_mean(s1, s2, rho);
}

// A jet with the given normalised entries, squeezed until it is admissible.
inline CovarianceJet synthetic_jet(Engine& g, double e, double bound) {
  std::uniform_real_distribution<double> u(-bound, bound);
  const double alpha = 4 * kPi * kPi * e / 3;
  for (;;) {
    const double r = u(g), r1 = u(g) * std::sqrt(e), r2 = u(g) * std::sqrt(e), r12 = u(g) * e;
    const double a = alpha * (1 - r * r);
    if (r1 * r1 >= a || r2 * r2 >= a) continue;
    const double m = std::sqrt(a - r1 * r1) * std::sqrt(a - r2 * r2);
    if (std::abs(r12 * (1 - r * r) + r * r1 * r2) >= 0.999 * m) continue;
    return CovarianceJet::from_values(r, r1, r2, r12);
  }
}

}  // namespace torusfield::testing
