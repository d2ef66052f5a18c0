#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "torusfield/common.hpp"

namespace torusfield {

/// Integer point of Z^3.
struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;

  constexpr std::int64_t norm2() const { return x * x + y * y + z * z; }
  constexpr LatticePoint operator-() const { return {-x, -y, -z}; }
  friend constexpr LatticePoint operator-(const LatticePoint& a, const LatticePoint& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend constexpr std::int64_t dot(const LatticePoint& a, const LatticePoint& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
  }
  friend constexpr auto operator<=>(const LatticePoint&, const LatticePoint&) = default;

  // Lexicographically positive: picks one representative per {mu, -mu} pair.
  constexpr bool is_positive() const { return x > 0 || (x == 0 && (y > 0 || (y == 0 && z > 0))); }

  Vec3 vector() const { return Vec3(double(x), double(y), double(z)); }
};

/// floor(sqrt(n)) in exact integer arithmetic.
std::int64_t isqrt(std::int64_t n);
bool is_perfect_square(std::int64_t n);

/// n is not of the form 4^a (8b + 7). Throws DomainError for n < 1.
bool is_sum_of_three_squares(std::int64_t n);

/// n mod 8 not in {0, 4, 7}: a primitive point of norm n exists.
bool is_admissible(std::int64_t n);

/// The lattice points of squared norm E. Immutable once built.
class LatticeShell {
 public:
  LatticeShell() = default;

  /// Builds a shell from explicit points (test fixtures, sub-shells). Checks
  /// that every norm equals `energy` and the set is closed under negation.
  static LatticeShell from_points(std::int64_t energy, std::vector<LatticePoint> points);

  std::int64_t energy() const { return energy_; }
  std::span<const LatticePoint> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  /// One point from each {mu, -mu} pair, in lexicographic order.
  std::vector<LatticePoint> half_shell() const;

 private:
  friend LatticeShell enumerate_shell(std::int64_t);
  LatticeShell(std::int64_t energy, std::vector<LatticePoint> points)
      : energy_(energy), points_(std::move(points)) {}

  std::int64_t energy_ = 0;
  std::vector<LatticePoint> points_;
};

/// All x with |x|^2 = E via an O(E) double loop and an integer square test.
/// Non-representable E gives an empty shell.
LatticeShell enumerate_shell(std::int64_t energy);

struct EnergyReport {
  double s = 0.0;
  double value = 0.0;       // sum over ordered distinct pairs of projected points
  double normalized = 0.0;  // value / N^2
  double dyadic_bound = 0.0;
};

/// Riesz s-energy of the shell projected to the unit sphere, 0 < s < 2.
EnergyReport riesz_energy(const LatticeShell& shell, double s);

/// Dyadic band majorant of the projected energy: each pair is charged the
/// inverse s-power of its band head 2^k <= |mu - nu| < 2^(k+1).
double riesz_dyadic_bound(const LatticeShell& shell, double s);

/// I(s) = 2^(1-s) / (2 - s), the continuum energy per N^2 on S^2.
double riesz_limit_constant(double s);

/// Number of nu with |nu - sqrt(E) * direction| < radius.
std::size_t cap_count(const LatticeShell& shell, const Vec3& direction, double radius);

/// |fraction of projected points in the cap - normalised cap area| for the cap
/// {x in S^2 : |x - direction| < radius}.
double cap_discrepancy(const LatticeShell& shell, const Vec3& direction, double radius);

/// Max of cap_discrepancy over caps with uniform direction and radius in (0, 2).
double equidistribution_discrepancy(const LatticeShell& shell, int cap_samples, std::uint64_t seed);

}  // namespace torusfield
