#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "torusfield/curve.hpp"
#include "torusfield/lattice.hpp"
#include "torusfield/wave.hpp"

namespace torusfield {

struct KacRiceParams {
  std::int64_t energy = 0;
  double alpha = 0.0;  // r12 on the diagonal: 4 pi^2 E / d
  int dimension = 3;
};

KacRiceParams make_kac_rice_params(std::int64_t energy);

/// Zero density K1 = sqrt(alpha) / pi = (2 / sqrt 3) sqrt E, constant along the curve.
double k1_density(std::int64_t energy);

/// E[Z] = L K1. In strict mode a zero length is rejected.
double expected_count(double length, std::int64_t energy, bool strict = false);
double expected_count(const Curve& curve, std::int64_t energy);

/// The pieces of the two-point correlation K2 at one jet.
struct K2Terms {
  double value = 0.0;
  double amplitude = 0.0;      // M = sqrt(alpha(1-r^2) - r1^2) sqrt(alpha(1-r^2) - r2^2)
  double rho = 0.0;            // after clamping to [-1, 1]
  double rho_overshoot = 0.0;  // max(0, |rho| - 1) before clamping
};

/// K2 = M (sqrt(1 - rho^2) + rho asin rho) / (pi^2 (1 - r^2)^{3/2}) with
/// rho = (r12 (1 - r^2) + r r1 r2) / M.
///
/// The radicands of M are clamped at zero when they fall below zero by no more
/// than 1e-12 of their scale; a larger deficit means the jet is not a valid
/// covariance and raises DomainError. |r| >= 1 raises DegenerateError.
K2Terms k2_terms(const CovarianceJet& jet, const KacRiceParams& params);
double k2_correlation(const CovarianceJet& jet, const KacRiceParams& params);

/// Tensor trapezoid quadratures of the four normalised second moments over
/// [0, L]^2 on a step of L / (ceil(L sqrt E) * grid_per_wavelength).
struct SecondMoments {
  double r_sq = 0.0;    // iint r^2
  double r1_sq = 0.0;   // iint (r1 / sqrt E)^2
  double r2_sq = 0.0;   // iint (r2 / sqrt E)^2
  double r12_sq = 0.0;  // iint (r12 / E)^2
  std::size_t intervals = 0;
  double step = 0.0;

  double total() const { return r_sq + r1_sq + r2_sq + r12_sq; }
};

SecondMoments second_moments(const LatticeShell& shell, const Curve& curve, int grid_per_wavelength,
                             unsigned threads = 1);

/// R2(E), the integrated second moment of the covariance jet.
double r2_moment(const LatticeShell& shell, const Curve& curve, int grid_per_wavelength, unsigned threads = 1);

/// Var(Z / sqrt E) = O(R2(E)); the proxy carries no constant.
double variance_upper_proxy(const LatticeShell& shell, const Curve& curve, int grid_per_wavelength,
                            unsigned threads = 1);

struct SingularReport {
  double c0 = 0.0;
  int k = 0;            // floor(L sqrt E / c0) + 1 subintervals per side
  double delta0 = 0.0;  // L / k
  std::vector<std::pair<int, int>> singular_pairs;  // 0-based (i, j), row-major order
  double r_sq_integral = 0.0;
  std::int64_t energy = 0;

  /// |singular_pairs| / (E iint r^2), the constant in the singular-cube count bound.
  double ratio() const;
};

/// Splits [0, L]^2 into k x k cubes and flags those where a probe grid of
/// probe x probe points finds |r| > 1/2. Probe points on shared cube faces
/// count for every cube they touch.
SingularReport singular_cubes(const LatticeShell& shell, const Curve& curve, double c0, int probe = 5,
                              int grid_per_wavelength = 8, unsigned threads = 1);

}  // namespace torusfield
