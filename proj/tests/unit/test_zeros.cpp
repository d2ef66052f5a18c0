#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "torusfield/rng.hpp"
#include "torusfield/zeros.hpp"

using namespace torusfield;

namespace {

// Segment along e1 through (a, 0.3, 0.7) -> (b, 0.3, 0.7), counted on [0, L]
// (or [0, L) when it wraps). The zeros of sin(2 pi k x1) sit at x1 = j / (2k).
ZeroCount segment_count(int k, double a, double b, const Vec3& shift = Vec3::Zero()) {
  const Curve seg = make_straight_segment(Vec3(a, 0.3, 0.7), Vec3(b, 0.3, 0.7)).translated(shift);
  return count_zeros(restrict_to_curve(sine_wave(k), seg), static_cast<std::int64_t>(k) * k, 32);
}

}  // namespace

TEST_CASE("analytic counts") {
  CHECK(analytic_zero_count(2, {0.0, 1.0, true, false}) == 4);
  CHECK(analytic_zero_count(1, {0.1, 0.4, true, true}) == 0);
  CHECK(analytic_zero_count(3, {0.0, 1.0, true, false}) == 6);
  CHECK(analytic_zero_count(2, {0.0, 1.0, true, true}) == 5);
  CHECK(analytic_zero_count(2, {0.0, 1.0, false, false}) == 3);
  CHECK(analytic_zero_count(1, {0.5, 0.5, true, true}) == 1);
  CHECK(analytic_zero_count(1, {0.5, 0.5, true, false}) == 0);
  CHECK(analytic_zero_count(1, {0.7, 0.2, true, true}) == 0);
  CHECK_THROWS_AS(analytic_zero_count(0, {0.0, 1.0}), DomainError);
}

TEST_CASE("sine waves on the full period") {
  for (int k : {1, 2, 3, 5}) {
    const ZeroCount z = segment_count(k, 0.0, 1.0);
    CHECK(z.count == 2 * k);
    CHECK(z.suspicious == 0);
    REQUIRE(z.roots.size() == static_cast<std::size_t>(2 * k));
    for (int j = 0; j < 2 * k; ++j) CHECK(std::abs(z.roots[j] - j / (2.0 * k)) < 1e-11);
    // Translating the closed segment along e1 moves the seam but never the count.
    for (double o : {0.05, 1.0 / (2 * k), 0.333, 0.5, 0.9})
      CHECK(segment_count(k, 0.0, 1.0, Vec3(o, 0, 0)).count == 2 * k);
  }
  CHECK(segment_count(2, 0.0, 1.0).count == 4);
}

TEST_CASE("sine waves on partial segments match the analytic count") {
  for (int k : {1, 2, 3, 5}) {
    std::vector<double> offsets;
    for (int j = 0; j <= 2 * k; ++j) offsets.push_back(j / (2.0 * k));
    for (double o : {0.013, 0.1, 0.27, 0.4, 0.61, 0.88, 0.999}) offsets.push_back(o);
    for (double a : offsets)
      for (double b : offsets) {
        if (!(b > a) || (a == 0.0 && b == 1.0)) continue;
        const ZeroCount z = segment_count(k, a, b);
        const std::int64_t expect = analytic_zero_count(k, {a, b, true, true});
        CHECK_MESSAGE(z.count == expect, "k=" << k << " a=" << a << " b=" << b);
        CHECK(z.suspicious == 0);
      }
  }
}

TEST_CASE("plane that misses every nodal plane") {
  const double plane = 1.0 / kTwoPi;
  const Curve seg = make_straight_segment(Vec3(plane, 0.1, 0.2), Vec3(plane, 0.8, 0.6));
  const ZeroCount z = count_zeros(restrict_to_curve(sine_wave(2), seg), 4, 32);
  CHECK(z.count == 0);
  CHECK(z.suspicious == 0);
  CHECK(analytic_zero_count(2, {plane, plane, true, true}) == 0);
}

TEST_CASE("grid scanner edge cases") {
  const Interval unit{0.0, 1.0, true, true};
  // All-zero function.
  const ZeroCount flat = count_zeros([](double) { return 0.0; }, unit, 0.01);
  CHECK(flat.count == 0);
  CHECK(flat.suspicious == 101);

  // Double root exactly on a grid point counts once.
  const ZeroCount dbl = count_zeros([](double t) { return (t - 0.5) * (t - 0.5); }, unit, 0.01);
  CHECK(dbl.count == 1);
  CHECK(dbl.roots.at(0) == doctest::Approx(0.5));

  // Near-tangency without a sign change.
  const ZeroCount near = count_zeros([](double t) { return std::pow(t - 0.5, 2) + 1e-10; }, unit, 0.01);
  CHECK(near.count == 0);
  CHECK(near.suspicious >= 1);

  // Two close roots between grid points: flagged, then recovered by the subgrid.
  auto close_pair = [](double t) { return std::pow(t - 0.505, 2) - 1e-8; };
  const ZeroCount pair = count_zeros(close_pair, unit, 0.01);
  CHECK(pair.count == 2);
  CHECK(pair.suspicious >= 1);
  REQUIRE(pair.roots.size() == 2);
  CHECK(std::abs(pair.roots[0] - 0.5049) < 1e-12);
  CHECK(std::abs(pair.roots[1] - 0.5051) < 1e-12);
  ZeroScanOptions coarse;
  coarse.refine_levels = 0;
  const ZeroCount missed = count_zeros(close_pair, unit, 0.01, coarse);
  CHECK(missed.count == 0);
  CHECK(missed.suspicious >= 1);

  // Endpoint policy.
  auto s = [](double t) { return std::sin(kTwoPi * t); };
  CHECK(count_zeros(s, {0.0, 1.0, true, true}, 0.01).count == 3);
  CHECK(count_zeros(s, {0.0, 1.0, true, false}, 0.01).count == 2);
  CHECK(count_zeros(s, {0.0, 1.0, false, false}, 0.01).count == 1);
  CHECK_THROWS_AS(count_zeros(s, unit, 0.0), DomainError);
  CHECK(count_zeros(s, {1.0, 0.0}, 0.1).count == 0);

  // Bisection precision.
  const ZeroCount one = count_zeros([](double t) { return t - 0.123456789; }, unit, 0.01);
  REQUIRE(one.count == 1);
  CHECK(std::abs(one.roots[0] - 0.123456789) < 2e-12);
}

TEST_CASE("counting grid") {
  const Curve h = make_torus_helix(0.25);
  const auto grid = counting_grid(h, 101, 16);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == h.length());
  CHECK(grid[1] - grid[0] <= 1.0 / (std::sqrt(101.0) * 16) + 1e-15);
  CHECK_THROWS_AS(counting_grid(h, 101, 15), DomainError);
  const Interval d = counting_domain(h);
  CHECK(d.include_lo);
  CHECK_FALSE(d.include_hi);
  CHECK(counting_domain(make_straight_segment(Vec3(0, 0, 0), Vec3(0.5, 0.5, 0))).include_hi);

  const ZeroCount z = count_zeros(restrict_to_curve(sample_wave(enumerate_shell(101), 1), h), 101, 16);
  CHECK(z.resolution <= 1.0 / (std::sqrt(101.0) * 16) + 1e-15);
}

TEST_CASE("resolution stability over 200 trials at E = 101") {
  const auto shell = enumerate_shell(101);
  const Curve h = make_torus_helix(0.25);
  int disagree = 0, unexplained = 0;
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    const RestrictedProcess f = restrict_to_curve(sample_wave(shell, derive_seed(99, {101, trial})), h);
    const ZeroCount a = count_zeros(f, 101, 16), b = count_zeros(f, 101, 64);
    if (a.count != b.count) {
      ++disagree;
      if (a.suspicious == 0) ++unexplained;
    }
  }
  CHECK(disagree < 2);
  CHECK(unexplained == 0);
}

TEST_CASE("partition additivity") {
  const auto shell = enumerate_shell(101);
  const Curve h = make_torus_helix(0.25);
  const double step = 1.0 / (std::sqrt(101.0) * 32);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RestrictedProcess f = restrict_to_curve(sample_wave(shell, seed), h);
    auto fn = [&](double t) { return f.value(t); };
    const ZeroCount whole = count_zeros(fn, {0.0, h.length(), true, false}, step);
    const double cuts[] = {0.0, 0.31, 0.77, 1.2, h.length()};
    std::int64_t sum = 0;
    for (int i = 0; i < 4; ++i) sum += count_zeros(fn, {cuts[i], cuts[i + 1], true, false}, step).count;
    CHECK(sum == whole.count);
    CHECK(whole.count == count_zeros(f, 101, 32).count);
  }
}

TEST_CASE("determinism") {
  const auto shell = enumerate_shell(101);
  const Curve c = make_planar_circle(0.25);
  const ZeroCount a = count_zeros(restrict_to_curve(sample_wave(shell, 5), c), 101, 32);
  const ZeroCount b = count_zeros(restrict_to_curve(sample_wave(shell, 5), c), 101, 32);
  CHECK(a.count == b.count);
  CHECK(a.suspicious == b.suspicious);
  CHECK(a.roots == b.roots);
  CHECK(a.count > 0);
}
