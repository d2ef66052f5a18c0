#include "torusfield/oscillatory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

#include "torusfield/parallel.hpp"
#include "torusfield/rng.hpp"

namespace torusfield {

Amplitude Amplitude::constant(double c) {
  return {[c](double) { return c; }, [](double) { return 0.0; }, std::abs(c)};
}

namespace {

constexpr int kOrder = 8;

struct GaussRule {
  std::array<double, kOrder> x;
  std::array<double, kOrder> w;
};

const GaussRule& gauss_rule() {
  static const GaussRule rule = [] {
    using G = boost::math::quadrature::gauss<double, kOrder>;
    GaussRule r{};
    const auto& a = G::abscissa();
    const auto& w = G::weights();
    const int half = kOrder / 2;
    for (int i = 0; i < half; ++i) {
      r.x[half - 1 - i] = -a[i];
      r.w[half - 1 - i] = w[i];
      r.x[half + i] = a[i];
      r.w[half + i] = w[i];
    }
    return r;
  }();
  return rule;
}

// Composite rule on `panels` equal panels with the amplitude folded into the weights.
struct PanelRule {
  std::vector<Vec3> positions;
  std::vector<double> weights;
  double sup_amplitude = 0.0;

  PanelRule(const Curve& curve, const Amplitude& amp, std::size_t panels) {
    const auto& g = gauss_rule();
    const double h = curve.length() / static_cast<double>(panels);
    positions.reserve(panels * kOrder);
    weights.reserve(panels * kOrder);
    for (std::size_t p = 0; p < panels; ++p) {
      const double mid = (static_cast<double>(p) + 0.5) * h;
      for (int i = 0; i < kOrder; ++i) {
        const double t = mid + 0.5 * h * g.x[i];
        const double a = amp.value(t);
        sup_amplitude = std::max(sup_amplitude, std::abs(a));
        positions.push_back(curve.position(t));
        weights.push_back(0.5 * h * g.w[i] * a);
      }
    }
  }

  std::complex<double> integrate(double lambda, const Vec3& xi) const {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
      const double ph = lambda * xi.dot(positions[i]);
      re += weights[i] * std::cos(ph);
      im += weights[i] * std::sin(ph);
    }
    return {re, im};
  }
};

std::size_t initial_panels(const Curve& curve, double lambda, const OscillatoryOptions& opt) {
  const double points = std::max<double>(opt.min_points, std::ceil(opt.points_per_period * lambda * curve.length() / kTwoPi));
  return static_cast<std::size_t>(std::ceil(points / kOrder));
}

void check_direction(const Vec3& xi) {
  if (std::abs(xi.norm() - 1.0) > 1e-12) throw DomainError("oscillatory_integral: xi must be a unit vector");
}

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("oscillatory_integral: lambda must be positive");
}

// Lazily refined ladder of rules P, 2P, 4P, ... for one (curve, amplitude, lambda).
class RuleLadder {
 public:
  RuleLadder(const Curve& curve, const Amplitude& amp, double lambda, const OscillatoryOptions& opt)
      : curve_(curve), amp_(amp), base_(initial_panels(curve, lambda, opt)) {}

  const PanelRule& level(std::size_t i) {
    while (rules_.size() <= i) rules_.emplace_back(curve_, amp_, base_ << rules_.size());
    return rules_[i];
  }

 private:
  const Curve& curve_;
  const Amplitude& amp_;
  std::size_t base_;
  std::deque<PanelRule> rules_;
};

OscillatoryValue accept(const Curve& curve, const Amplitude& amp, const PanelRule& fine, std::complex<double> value,
                        double error) {
  OscillatoryValue out;
  out.value = value;
  out.error = error;
  out.nodes = fine.positions.size();
  const double sup = amp.sup > 0.0 ? amp.sup : fine.sup_amplitude;
  out.bound = curve.length() * sup;
  if (std::abs(value) > out.bound * (1.0 + 1e-9) + error)
    throw std::logic_error("oscillatory_integral: |I| exceeds L sup|A|");
  return out;
}

}  // namespace

OscillatoryValue integrate_oscillatory(const Curve& curve, const Amplitude& amplitude, double lambda, const Vec3& xi,
                                       const OscillatoryOptions& options) {
  check_lambda(lambda);
  check_direction(xi);
  RuleLadder ladder(curve, amplitude, lambda, options);
  std::complex<double> coarse = ladder.level(0).integrate(lambda, xi);
  for (int d = 1;; ++d) {
    const PanelRule& fine = ladder.level(static_cast<std::size_t>(d));
    const std::complex<double> value = fine.integrate(lambda, xi);
    const double error = std::abs(value - coarse);
    const double sup = amplitude.sup > 0.0 ? amplitude.sup : fine.sup_amplitude;
    if (error <= options.tolerance * curve.length() * sup || d >= options.max_doublings)
      return accept(curve, amplitude, fine, value, error);
    coarse = value;
  }
}

std::complex<double> oscillatory_integral(const Curve& curve, const Amplitude& amplitude, double lambda,
                                          const Vec3& xi, const OscillatoryOptions& options) {
  return integrate_oscillatory(curve, amplitude, lambda, xi, options).value;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("loglog_slope: need at least two matched points");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("loglog_slope: values must be positive");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw DomainError("loglog_slope: x values must not all coincide");
  return sxy / sxx;
}

namespace {

void check_grid(std::span<const double> lambdas) {
  if (lambdas.size() < 4) throw DomainError("decay_fit: need at least four lambda values");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    check_lambda(lambdas[i]);
    if (i > 0 && !(lambdas[i] > lambdas[i - 1])) throw DomainError("decay_fit: lambdas must be strictly increasing");
  }
  if (lambdas.back() < 100.0 * lambdas.front()) throw DomainError("decay_fit: lambdas must span two decades");
}

}  // namespace

DecayFit decay_fit(const Curve& curve, std::span<const double> lambdas, std::span<const Vec3> directions,
                   unsigned threads, const OscillatoryOptions& options) {
  check_grid(lambdas);
  if (directions.empty()) throw DomainError("decay_fit: no directions");
  for (const auto& xi : directions) check_direction(xi);

  const Amplitude one = Amplitude::constant(1.0);
  DecayFit fit;
  fit.lambdas.assign(lambdas.begin(), lambdas.end());
  fit.directions = directions.size();
  for (double lambda : lambdas) {
    RuleLadder ladder(curve, one, lambda, options);
    ladder.level(1);
    std::vector<std::complex<double>> coarse(directions.size()), value(directions.size());
    std::vector<std::size_t> pending(directions.size());
    for (std::size_t i = 0; i < pending.size(); ++i) pending[i] = i;
    for (int d = 1; !pending.empty(); ++d) {
      const PanelRule& lo = ladder.level(static_cast<std::size_t>(d - 1));
      const PanelRule& hi = ladder.level(static_cast<std::size_t>(d));
      parallel_for(pending.size(), threads, [&](std::size_t k) {
        const std::size_t i = pending[k];
        if (d == 1) coarse[i] = lo.integrate(lambda, directions[i]);
        value[i] = hi.integrate(lambda, directions[i]);
      });
      std::vector<std::size_t> next;
      for (std::size_t i : pending) {
        const double error = std::abs(value[i] - coarse[i]);
        if (error > options.tolerance * curve.length() && d < options.max_doublings) {
          next.push_back(i);
          coarse[i] = value[i];
        } else {
          accept(curve, one, hi, value[i], error);
        }
      }
      pending = std::move(next);
    }
    double best = 0.0;
    for (const auto& v : value) best = std::max(best, std::abs(v));
    fit.max_abs.push_back(best);
  }
  fit.exponent = loglog_slope(fit.lambdas, fit.max_abs);
  return fit;
}

DecayFit decay_fit(const Curve& curve, std::span<const double> lambdas, int xi_samples, std::uint64_t seed,
                   unsigned threads, const OscillatoryOptions& options) {
  if (xi_samples < 32) throw DomainError("decay_fit: need at least 32 directions");
  check_grid(lambdas);
  auto engine = make_engine(seed);
  std::vector<Vec3> dirs;
  dirs.reserve(static_cast<std::size_t>(xi_samples));
  for (int i = 0; i < xi_samples; ++i) dirs.push_back(random_unit_vector(engine));
  DecayFit fit = decay_fit(curve, lambdas, dirs, threads, options);
  fit.seed = seed;
  return fit;
}

std::vector<Vec3> lattice_directions(const LatticeShell& shell) {
  std::set<LatticePoint> primitive;
  const auto& pts = shell.points();
  for (const auto& mu : pts)
    for (const auto& nu : pts) {
      if (mu == nu) continue;
      LatticePoint d = mu - nu;
      const std::int64_t g = std::gcd(std::gcd(std::abs(d.x), std::abs(d.y)), std::abs(d.z));
      primitive.insert({d.x / g, d.y / g, d.z / g});
    }
  std::vector<Vec3> out;
  out.reserve(primitive.size());
  for (const auto& p : primitive) out.push_back(p.vector().normalized());
  return out;
}

}  // namespace torusfield
