#include "torusfield/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "torusfield/parallel.hpp"
#include "torusfield/rng.hpp"

namespace torusfield {

namespace {

void check_positive(std::int64_t n, const char* what) {
  if (n < 1) throw DomainError(std::string(what) + ": expected a positive integer, got " + std::to_string(n));
}

void check_energy_args(const LatticeShell& shell, double s) {
  if (!(s > 0.0 && s < 2.0)) throw DomainError("riesz energy: exponent s must lie in (0, 2)");
  if (shell.size() < 2) throw DegenerateError("riesz energy: undefined for fewer than two points");
}

// counts[m] = number of ordered pairs (mu, nu), mu != nu, with E - <mu, nu> = m,
// i.e. |mu - nu|^2 = 2m. Exact, and shared by the energy and its dyadic bound.
std::vector<std::int64_t> pair_distance_census(const LatticeShell& shell) {
  const std::int64_t e = shell.energy();
  std::vector<std::int64_t> counts(static_cast<std::size_t>(2 * e + 1), 0);
  auto pts = shell.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      counts[static_cast<std::size_t>(e - dot(pts[i], pts[j]))] += 2;
    }
  }
  return counts;
}

}  // namespace

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw DomainError("isqrt: negative argument");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) --r;
  while (r + 1 <= n / (r + 1)) ++r;
  return r;
}

bool is_perfect_square(std::int64_t n) {
  if (n < 0) return false;
  std::int64_t r = isqrt(n);
  return r * r == n;
}

bool is_sum_of_three_squares(std::int64_t n) {
  check_positive(n, "is_sum_of_three_squares");
  while (n % 4 == 0) n /= 4;
  return n % 8 != 7;
}

bool is_admissible(std::int64_t n) {
  check_positive(n, "is_admissible");
  auto r = n % 8;
  return r != 0 && r != 4 && r != 7;
}

LatticeShell LatticeShell::from_points(std::int64_t energy, std::vector<LatticePoint> points) {
  check_positive(energy, "LatticeShell::from_points");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (const auto& p : points) {
    if (p.norm2() != energy) throw DomainError("LatticeShell::from_points: point norm differs from E");
    if (!std::binary_search(points.begin(), points.end(), -p))
      throw DomainError("LatticeShell::from_points: point set is not closed under negation");
  }
  return LatticeShell(energy, std::move(points));
}

std::vector<LatticePoint> LatticeShell::half_shell() const {
  std::vector<LatticePoint> half;
  half.reserve(points_.size() / 2);
  for (const auto& p : points_)
    if (p.is_positive()) half.push_back(p);
  return half;
}

LatticeShell enumerate_shell(std::int64_t energy) {
  check_positive(energy, "enumerate_shell");
  std::vector<LatticePoint> pts;
  if (!is_sum_of_three_squares(energy)) return LatticeShell(energy, {});
  const std::int64_t m = isqrt(energy);
  for (std::int64_t x = -m; x <= m; ++x) {
    const std::int64_t rx = energy - x * x;
    const std::int64_t my = isqrt(rx);
    for (std::int64_t y = -my; y <= my; ++y) {
      const std::int64_t rz = rx - y * y;
      const std::int64_t z = isqrt(rz);
      if (z * z != rz) continue;
      pts.push_back({x, y, z});
      if (z != 0) pts.push_back({x, y, -z});
    }
  }
  std::sort(pts.begin(), pts.end());
  return LatticeShell(energy, std::move(pts));
}

double riesz_limit_constant(double s) {
  if (!(s > 0.0 && s < 2.0)) throw DomainError("riesz_limit_constant: s must lie in (0, 2)");
  return std::pow(2.0, 1.0 - s) / (2.0 - s);
}

EnergyReport riesz_energy(const LatticeShell& shell, double s) {
  check_energy_args(shell, s);
  const auto counts = pair_distance_census(shell);
  const double e = static_cast<double>(shell.energy());
  // Projected distance^2 = 2m / E, taken from the exact integer census.
  CompensatedSum sum;
  for (std::size_t m = 1; m < counts.size(); ++m) {
    if (counts[m] == 0) continue;
    sum.add(static_cast<double>(counts[m]) * std::pow(e / (2.0 * static_cast<double>(m)), 0.5 * s));
  }
  EnergyReport report;
  report.s = s;
  report.value = sum.value();
  const double n = static_cast<double>(shell.size());
  report.normalized = report.value / (n * n);
  report.dyadic_bound = riesz_dyadic_bound(shell, s);
  return report;
}

double riesz_dyadic_bound(const LatticeShell& shell, double s) {
  check_energy_args(shell, s);
  const auto counts = pair_distance_census(shell);
  // Band k holds 4^k <= |mu - nu|^2 < 4^(k+1); membership is decided on integers.
  std::vector<std::int64_t> band;
  for (std::size_t m = 1; m < counts.size(); ++m) {
    if (counts[m] == 0) continue;
    const std::int64_t d2 = 2 * static_cast<std::int64_t>(m);
    std::size_t k = 0;
    while ((std::int64_t{4} << (2 * k)) <= d2) ++k;
    if (band.size() <= k) band.resize(k + 1, 0);
    band[k] += counts[m];
  }
  CompensatedSum sum;
  for (std::size_t k = 0; k < band.size(); ++k)
    if (band[k]) sum.add(static_cast<double>(band[k]) * std::pow(2.0, -static_cast<double>(k) * s));
  return sum.value() * std::pow(static_cast<double>(shell.energy()), 0.5 * s);
}

std::size_t cap_count(const LatticeShell& shell, const Vec3& direction, double radius) {
  if (std::abs(direction.norm() - 1.0) > 1e-12) throw DomainError("cap_count: direction must be a unit vector");
  if (radius < 0.0) throw DomainError("cap_count: radius must be non-negative");
  const Vec3 centre = std::sqrt(static_cast<double>(shell.energy())) * direction;
  const double r2 = radius * radius;
  std::size_t n = 0;
  for (const auto& p : shell.points())
    if ((p.vector() - centre).squaredNorm() < r2) ++n;
  return n;
}

double cap_discrepancy(const LatticeShell& shell, const Vec3& direction, double radius) {
  if (shell.empty()) throw DegenerateError("cap_discrepancy: empty shell");
  const double scale = std::sqrt(static_cast<double>(shell.energy()));
  const double fraction =
      static_cast<double>(cap_count(shell, direction, radius * scale)) / static_cast<double>(shell.size());
  // {x : |x - u| < rho} on the unit sphere has normalised area rho^2 / 4.
  const double area = std::min(1.0, radius * radius / 4.0);
  return std::abs(fraction - area);
}

double equidistribution_discrepancy(const LatticeShell& shell, int cap_samples, std::uint64_t seed) {
  if (cap_samples < 1) throw DomainError("equidistribution_discrepancy: need at least one cap");
  if (shell.empty()) throw DegenerateError("equidistribution_discrepancy: empty shell");
  auto engine = make_engine(seed);
  std::uniform_real_distribution<double> radius_dist(0.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < cap_samples; ++i) {
    const Vec3 u = random_unit_vector(engine);
    const double rho = radius_dist(engine);
    worst = std::max(worst, cap_discrepancy(shell, u, rho));
  }
  return worst;
}

}  // namespace torusfield
