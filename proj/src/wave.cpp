#include "torusfield/wave.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "torusfield/rng.hpp"

namespace torusfield {

namespace {

double phase(const LatticePoint& mu, const Vec3& x) {
  return kTwoPi * (double(mu.x) * x.x() + double(mu.y) * x.y() + double(mu.z) * x.z());
}

double projection(const LatticePoint& mu, const Vec3& v) {
  return double(mu.x) * v.x() + double(mu.y) * v.y() + double(mu.z) * v.z();
}

}  // namespace

WaveSample sample_wave(const LatticeShell& shell, std::uint64_t seed) {
  if (shell.empty()) throw DegenerateError("sample_wave: empty shell");
  WaveSample w;
  w.energy_ = shell.energy();
  w.shell_size_ = shell.size();
  w.seed_ = seed;
  w.reps_ = shell.half_shell();
  w.coeffs_.reserve(w.reps_.size());
  auto engine = make_engine(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  for (std::size_t i = 0; i < w.reps_.size(); ++i) {
    const double re = normal(engine);
    const double im = normal(engine);
    w.coeffs_.emplace_back(re, im);
  }
  return w;
}

WaveSample WaveSample::from_coefficients(const LatticeShell& shell,
                                         std::span<const std::pair<LatticePoint, std::complex<double>>> coeffs,
                                         std::uint64_t seed) {
  if (shell.empty()) throw DegenerateError("WaveSample::from_coefficients: empty shell");
  WaveSample w;
  w.energy_ = shell.energy();
  w.shell_size_ = shell.size();
  w.seed_ = seed;
  w.reps_ = shell.half_shell();
  w.coeffs_.assign(w.reps_.size(), {0.0, 0.0});
  for (const auto& [mu, a] : coeffs) {
    const bool positive = mu.is_positive();
    const LatticePoint rep = positive ? mu : -mu;
    auto it = std::lower_bound(w.reps_.begin(), w.reps_.end(), rep);
    if (it == w.reps_.end() || *it != rep)
      throw DomainError("WaveSample::from_coefficients: point is not on the shell");
    w.coeffs_[static_cast<std::size_t>(it - w.reps_.begin())] = positive ? a : std::conj(a);
  }
  return w;
}

WaveSample sine_wave(int k) {
  if (k < 1) throw DomainError("sine_wave: k must be positive");
  const auto shell = enumerate_shell(std::int64_t{k} * k);
  // 2 Re(a e^{i theta}) / sqrt(N) = sin(theta) for a = -i sqrt(N) / 2.
  const double amp = std::sqrt(static_cast<double>(shell.size())) / 2.0;
  const std::pair<LatticePoint, std::complex<double>> c{{k, 0, 0}, {0.0, -amp}};
  return WaveSample::from_coefficients(shell, std::span(&c, 1));
}

double WaveSample::value(const Vec3& x) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    const double th = phase(reps_[i], x);
    sum += coeffs_[i].real() * std::cos(th) - coeffs_[i].imag() * std::sin(th);
  }
  return 2.0 * sum / std::sqrt(static_cast<double>(shell_size_));
}

std::pair<double, double> WaveSample::value_and_slope(const Vec3& x, const Vec3& direction) const {
  double v = 0.0, d = 0.0;
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    const double th = phase(reps_[i], x);
    const double c = std::cos(th), s = std::sin(th);
    const double re = coeffs_[i].real(), im = coeffs_[i].imag();
    v += re * c - im * s;
    d += -(re * s + im * c) * kTwoPi * projection(reps_[i], direction);
  }
  const double scale = 2.0 / std::sqrt(static_cast<double>(shell_size_));
  return {v * scale, d * scale};
}

FieldJet WaveSample::jet(const Vec3& x) const {
  FieldJet j;
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    const double th = phase(reps_[i], x);
    const double c = std::cos(th), s = std::sin(th);
    const double re = coeffs_[i].real(), im = coeffs_[i].imag();
    const Vec3 mu = reps_[i].vector();
    const double even = re * c - im * s;
    const double odd = -(re * s + im * c);
    j.value += even;
    j.gradient += (kTwoPi * odd) * mu;
    j.hessian -= (kTwoPi * kTwoPi * even) * (mu * mu.transpose());
  }
  const double scale = 2.0 / std::sqrt(static_cast<double>(shell_size_));
  j.value *= scale;
  j.gradient *= scale;
  j.hessian *= scale;
  return j;
}

std::complex<double> WaveSample::value_full_shell(const Vec3& x) const {
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    const double th = phase(reps_[i], x);
    sum += coeffs_[i] * std::polar(1.0, th);
    sum += std::conj(coeffs_[i]) * std::polar(1.0, -th);
  }
  return sum / std::sqrt(static_cast<double>(shell_size_));
}

FieldJet eval_field_jet(const WaveSample& wave, const Vec3& x) { return wave.jet(x); }

double RestrictedProcess::derivative(double t) const {
  const CurveJet j = curve_.jet(t);
  return wave_.value_and_slope(j.position, j.d1).second;
}

RestrictedProcess restrict_to_curve(const WaveSample& wave, const Curve& curve) { return {wave, curve}; }

CovarianceJet covariance_jet(const LatticeShell& shell, const CurveJet& at1, const CurveJet& at2) {
  if (shell.empty()) throw DegenerateError("covariance_jet: empty shell");
  const Vec3 delta = at1.position - at2.position;
  double r = 0.0, omr = 0.0, r1 = 0.0, r2 = 0.0, r12 = 0.0;
  for (const auto& mu : shell.half_shell()) {
    const double th = phase(mu, delta);
    const double c = std::cos(th), s = std::sin(th);
    const double half = std::sin(0.5 * th);
    const double g1 = kTwoPi * projection(mu, at1.d1);
    const double g2 = kTwoPi * projection(mu, at2.d1);
    r += c;
    omr += 2.0 * half * half;
    r1 -= s * g1;
    r2 += s * g2;
    r12 += c * g1 * g2;
  }
  const double scale = 2.0 / static_cast<double>(shell.size());
  return {r * scale, r1 * scale, r2 * scale, r12 * scale, omr * scale};
}

CovarianceJet covariance_jet(const LatticeShell& shell, const Curve& curve, double t1, double t2) {
  return covariance_jet(shell, curve.jet(t1), curve.jet(t2));
}

RestrictedBasis::RestrictedBasis(const LatticeShell& shell, const Curve& curve, std::span<const double> times)
    : shell_size_(shell.size()) {
  if (shell.empty()) throw DegenerateError("RestrictedBasis: empty shell");
  const auto half = shell.half_shell();
  const auto n = static_cast<Eigen::Index>(times.size());
  const auto m = static_cast<Eigen::Index>(half.size());
  cos_.resize(n, m);
  sin_.resize(n, m);
  rate_.resize(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    const CurveJet j = curve.jet(times[static_cast<std::size_t>(i)]);
    for (Eigen::Index k = 0; k < m; ++k) {
      const auto& mu = half[static_cast<std::size_t>(k)];
      const double th = phase(mu, j.position);
      cos_(i, k) = std::cos(th);
      sin_(i, k) = std::sin(th);
      rate_(i, k) = kTwoPi * projection(mu, j.d1);
    }
  }
}

Eigen::VectorXd RestrictedBasis::values(const WaveSample& wave) const {
  const auto m = modes();
  if (static_cast<Eigen::Index>(wave.coefficients().size()) != m)
    throw DomainError("RestrictedBasis::values: wave belongs to a different shell");
  Eigen::VectorXd re(m), im(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    re[k] = wave.coefficients()[static_cast<std::size_t>(k)].real();
    im[k] = wave.coefficients()[static_cast<std::size_t>(k)].imag();
  }
  const double scale = 2.0 / std::sqrt(static_cast<double>(shell_size_));
  return scale * (cos_ * re - sin_ * im);
}

}  // namespace torusfield
