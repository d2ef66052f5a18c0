#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "torusfield/common.hpp"
#include "torusfield/curve.hpp"
#include "torusfield/lattice.hpp"

namespace torusfield {

struct FieldJet {
  double value = 0.0;
  Vec3 gradient = Vec3::Zero();
  Mat3 hessian = Mat3::Zero();
};

/// One draw of the arithmetic random wave
///
///   F(x) = N^{-1/2} sum_{mu in E(E)} a_mu e(<mu, x>),   a_{-mu} = conj(a_mu).
///
/// Only the lexicographically positive half of the shell is stored; F is
/// evaluated as N^{-1/2} sum_half 2 Re(a_mu e(<mu, x>)), which is real by
/// construction.
class WaveSample {
 public:
  WaveSample() = default;

  /// Manual wave from explicit coefficients. Entries given for a negative
  /// representative are stored conjugated at -mu; missing pairs are zero.
  static WaveSample from_coefficients(const LatticeShell& shell,
                                      std::span<const std::pair<LatticePoint, std::complex<double>>> coeffs,
                                      std::uint64_t seed = 0);

  std::int64_t energy() const { return energy_; }
  std::size_t shell_size() const { return shell_size_; }
  std::uint64_t seed() const { return seed_; }
  std::span<const LatticePoint> representatives() const { return reps_; }
  std::span<const std::complex<double>> coefficients() const { return coeffs_; }

  double value(const Vec3& x) const;
  FieldJet jet(const Vec3& x) const;
  /// F(x) and <grad F(x), direction> in one pass.
  std::pair<double, double> value_and_slope(const Vec3& x, const Vec3& direction) const;

  /// Direct sum over the whole shell with the conjugate coefficients filled
  /// in; the imaginary part is roundoff only.
  std::complex<double> value_full_shell(const Vec3& x) const;

 private:
  friend WaveSample sample_wave(const LatticeShell&, std::uint64_t);

  std::int64_t energy_ = 0;
  std::size_t shell_size_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<LatticePoint> reps_;
  std::vector<std::complex<double>> coeffs_;
};

/// Independent standard complex Gaussians per +-pair with E|a|^2 = 1 (real and
/// imaginary parts of variance 1/2). Deterministic in the seed.
WaveSample sample_wave(const LatticeShell& shell, std::uint64_t seed);

/// sin(2 pi k x_1) written on the shell E = k^2.
WaveSample sine_wave(int k);

FieldJet eval_field_jet(const WaveSample& wave, const Vec3& x);

/// f(t) = F(gamma(t)), f'(t) = <grad F(gamma(t)), gamma'(t)>.
class RestrictedProcess {
 public:
  RestrictedProcess(WaveSample wave, Curve curve) : wave_(std::move(wave)), curve_(std::move(curve)) {}

  double value(double t) const { return wave_.value(curve_.position(t)); }
  double derivative(double t) const;

  const WaveSample& wave() const { return wave_; }
  const Curve& curve() const { return curve_; }

 private:
  WaveSample wave_;
  Curve curve_;
};

RestrictedProcess restrict_to_curve(const WaveSample& wave, const Curve& curve);

/// (r, r1, r2, r12) of r(t1, t2) = r_F(gamma(t1) - gamma(t2)). `one_minus_r`
/// is accumulated as (2/N) sum 2 sin^2(pi <mu, dgamma>) so that 1 - r keeps
/// full relative precision next to the diagonal.
struct CovarianceJet {
  double r = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double r12 = 0.0;
  double one_minus_r = 1.0;

  static CovarianceJet from_values(double r, double r1, double r2, double r12) {
    return {r, r1, r2, r12, 1.0 - r};
  }
};

CovarianceJet covariance_jet(const LatticeShell& shell, const Curve& curve, double t1, double t2);
CovarianceJet covariance_jet(const LatticeShell& shell, const CurveJet& at1, const CurveJet& at2);

/// Restricted Fourier basis of a shell at fixed curve parameters:
/// cos/sin of 2 pi <mu, gamma(t_i)> and the phase rates 2 pi <mu, gamma'(t_i)>
/// for every half-shell mu. Lets grid-wide covariance sums and field values be
/// formed as dense products.
class RestrictedBasis {
 public:
  RestrictedBasis(const LatticeShell& shell, const Curve& curve, std::span<const double> times);

  Eigen::Index points() const { return cos_.rows(); }
  Eigen::Index modes() const { return cos_.cols(); }
  std::size_t shell_size() const { return shell_size_; }

  const Eigen::MatrixXd& cos() const { return cos_; }
  const Eigen::MatrixXd& sin() const { return sin_; }
  const Eigen::MatrixXd& rate() const { return rate_; }

  /// f(t_i) for every grid point.
  Eigen::VectorXd values(const WaveSample& wave) const;

 private:
  std::size_t shell_size_;
  Eigen::MatrixXd cos_;
  Eigen::MatrixXd sin_;
  Eigen::MatrixXd rate_;
};

}  // namespace torusfield
