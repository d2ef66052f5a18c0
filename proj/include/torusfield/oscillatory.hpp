#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "torusfield/curve.hpp"
#include "torusfield/lattice.hpp"

namespace torusfield {

/// Smooth amplitude A(t) on [0, L]. `sup` may be left at 0, in which case it is
/// estimated from the quadrature nodes.
struct Amplitude {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  double sup = 0.0;

  static Amplitude constant(double c = 1.0);
};

struct OscillatoryOptions {
  int points_per_period = 16;   // nodes per phase period 2 pi / lambda
  int min_points = 64;
  double tolerance = 1e-9;      // relative to L sup|A|
  int max_doublings = 12;
};

struct OscillatoryValue {
  std::complex<double> value;
  double error = 0.0;      // |I_2P - I_P| at acceptance
  std::size_t nodes = 0;   // Gauss-Legendre nodes of the accepted rule
  double bound = 0.0;      // L sup|A|
};

/// I(lambda, xi) = int_0^L A(t) e^{i lambda <xi, gamma(t)>} dt by composite
/// 8-point Gauss-Legendre on panels that are doubled until two successive
/// rules agree to `tolerance`.
OscillatoryValue integrate_oscillatory(const Curve& curve, const Amplitude& amplitude, double lambda, const Vec3& xi,
                                       const OscillatoryOptions& options = {});

std::complex<double> oscillatory_integral(const Curve& curve, const Amplitude& amplitude, double lambda,
                                          const Vec3& xi, const OscillatoryOptions& options = {});

struct DecayFit {
  std::vector<double> lambdas;
  std::vector<double> max_abs;
  double exponent = 0.0;
  std::size_t directions = 0;
  std::uint64_t seed = 0;
};

/// Max over `xi_samples` seeded uniform directions of |I(lambda, xi)| with A = 1,
/// per lambda, and the least-squares slope of log max_abs against log lambda.
DecayFit decay_fit(const Curve& curve, std::span<const double> lambdas, int xi_samples, std::uint64_t seed,
                   unsigned threads = 1, const OscillatoryOptions& options = {});

/// Same with an explicit direction set.
DecayFit decay_fit(const Curve& curve, std::span<const double> lambdas, std::span<const Vec3> directions,
                   unsigned threads = 1, const OscillatoryOptions& options = {});

/// Distinct unit directions (mu - nu) / |mu - nu| over ordered pairs of a shell.
std::vector<Vec3> lattice_directions(const LatticeShell& shell);

/// Ordinary least-squares slope of log y against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace torusfield
