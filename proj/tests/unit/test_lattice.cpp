#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "torusfield/lattice.hpp"

using namespace torusfield;

namespace {

// Independent oracles: triple loop over the box, floating-point pair sums.
std::vector<LatticePoint> brute_force(std::int64_t e) {
  std::vector<LatticePoint> out;
  const auto r = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(e))));
  for (std::int64_t x = -r; x <= r; ++x)
    for (std::int64_t y = -r; y <= r; ++y)
      for (std::int64_t z = -r; z <= r; ++z)
        if (x * x + y * y + z * z == e) out.push_back({x, y, z});
  std::sort(out.begin(), out.end());
  return out;
}

bool excluded_form(std::int64_t n) {
  while (n % 4 == 0) n /= 4;
  return n % 8 == 7;
}

double direct_energy(const LatticeShell& shell, double s) {
  const double root = std::sqrt(static_cast<double>(shell.energy()));
  double sum = 0.0;
  for (const auto& a : shell.points())
    for (const auto& b : shell.points()) {
      if (a == b) continue;
      sum += std::pow(((a.vector() - b.vector()) / root).norm(), -s);
    }
  return sum;
}

double direct_band_bound(const LatticeShell& shell, double s) {
  double sum = 0.0;
  for (const auto& a : shell.points())
    for (const auto& b : shell.points()) {
      if (a == b) continue;
      const double d = (a.vector() - b.vector()).norm();
      const int k = static_cast<int>(std::floor(std::log2(d) + 1e-12));
      sum += std::pow(2.0, -k * s);
    }
  return sum * std::pow(static_cast<double>(shell.energy()), 0.5 * s);
}

}  // namespace

TEST_CASE("three squares and admissibility") {
  CHECK_FALSE(is_sum_of_three_squares(7));
  CHECK(is_sum_of_three_squares(3));
  CHECK_FALSE(is_sum_of_three_squares(28));
  CHECK_THROWS_AS(is_sum_of_three_squares(0), DomainError);
  CHECK(is_admissible(1));
  CHECK_FALSE(is_admissible(4));
  CHECK(is_admissible(11));
  CHECK_FALSE(is_admissible(7));
  CHECK_FALSE(is_admissible(8));
  for (std::int64_t n = 1; n <= 2000; ++n) CHECK(is_sum_of_three_squares(n) == !excluded_form(n));
}

TEST_CASE("integer square roots") {
  for (std::int64_t n = 0; n < 5000; ++n) {
    const auto r = isqrt(n);
    CHECK(r * r <= n);
    CHECK((r + 1) * (r + 1) > n);
  }
  const std::int64_t big = 3037000499LL;
  CHECK(isqrt(big * big) == big);
  CHECK(isqrt(big * big - 1) == big - 1);
  CHECK(is_perfect_square(big * big));
  CHECK_FALSE(is_perfect_square(big * big - 1));
}

TEST_CASE("small shells") {
  const auto s1 = enumerate_shell(1);
  CHECK(s1.size() == 6);
  const std::set<LatticePoint> expect{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  CHECK(std::set<LatticePoint>(s1.points().begin(), s1.points().end()) == expect);
  CHECK(enumerate_shell(2).size() == 12);
  CHECK(enumerate_shell(7).size() == 0);
  CHECK(enumerate_shell(7).empty());
  CHECK(enumerate_shell(3).size() == 8);
  CHECK(enumerate_shell(11).size() == 24);
  CHECK(enumerate_shell(101).size() == 168);
  CHECK(s1.half_shell().size() == 3);
  CHECK_THROWS_AS(enumerate_shell(0), DomainError);
}

TEST_CASE("enumeration matches brute force for E <= 200") {
  for (std::int64_t e = 1; e <= 200; ++e) {
    const auto shell = enumerate_shell(e);
    const auto bf = brute_force(e);
    REQUIRE(shell.size() == bf.size());
    CHECK(std::equal(bf.begin(), bf.end(), shell.points().begin()));
  }
}

TEST_CASE("representability and negation closure") {
  for (std::int64_t e = 1; e <= 10000; ++e) {
    const auto shell = enumerate_shell(e);
    CHECK((shell.size() > 0) == is_sum_of_three_squares(e));
    CHECK(shell.empty() == excluded_form(e));
    if (e <= 1000) {
      const std::set<LatticePoint> pts(shell.points().begin(), shell.points().end());
      for (const auto& p : shell.points()) {
        CHECK(p.norm2() == e);
        CHECK(pts.count(-p) == 1);
      }
    }
  }
}

TEST_CASE("from_points validation") {
  CHECK_NOTHROW(LatticeShell::from_points(1, {{1, 0, 0}, {-1, 0, 0}}));
  CHECK_THROWS_AS(LatticeShell::from_points(1, {{1, 0, 0}}), DomainError);
  CHECK_THROWS_AS(LatticeShell::from_points(2, {{1, 0, 0}, {-1, 0, 0}}), DomainError);
}

TEST_CASE("riesz energy examples") {
  const auto s1 = enumerate_shell(1);
  CHECK(riesz_energy(s1, 1.0).value == doctest::Approx(3.0 + 12.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(riesz_energy(s1, 1.0).normalized == doctest::Approx((3.0 + 12.0 * std::sqrt(2.0)) / 36.0).epsilon(1e-12));

  const auto pair = LatticeShell::from_points(11, {{3, 1, 1}, {-3, -1, -1}});
  CHECK(riesz_energy(pair, 1.0).value == doctest::Approx(1.0).epsilon(1e-14));

  const auto s2 = enumerate_shell(2);
  CHECK(riesz_energy(s2, 0.5).value == doctest::Approx(direct_energy(s2, 0.5)).epsilon(1e-12));
  for (std::int64_t e : {3, 11, 50, 101})
    for (double s : {0.5, 2.0 / 3.0, 1.0, 1.5}) {
      const auto sh = enumerate_shell(e);
      CHECK(riesz_energy(sh, s).value == doctest::Approx(direct_energy(sh, s)).epsilon(1e-11));
    }
}

TEST_CASE("riesz errors") {
  const auto s1 = enumerate_shell(1);
  CHECK_THROWS_AS(riesz_energy(s1, 0.0), DomainError);
  CHECK_THROWS_AS(riesz_energy(s1, 2.0), DomainError);
  CHECK_THROWS_AS(riesz_dyadic_bound(s1, -1.0), DomainError);
  CHECK_THROWS_AS(riesz_energy(enumerate_shell(7), 1.0), DegenerateError);
  CHECK_THROWS_AS(riesz_dyadic_bound(enumerate_shell(28), 1.0), DegenerateError);
}

TEST_CASE("dyadic bound") {
  // {mu, -mu} with E = 11: |mu - nu| = 2 sqrt 11 lies in [4, 8), k = 2.
  const auto pair = LatticeShell::from_points(11, {{3, 1, 1}, {-3, -1, -1}});
  CHECK(riesz_dyadic_bound(pair, 1.0) == doctest::Approx(2.0 * std::pow(2.0, -2.0) * std::sqrt(11.0)).epsilon(1e-14));

  const auto s1 = enumerate_shell(1);
  const double v = riesz_energy(s1, 1.0).value;
  const double b = riesz_dyadic_bound(s1, 1.0);
  CHECK(b >= v);
  CHECK(v * 2.0 >= b);

  const auto s3 = enumerate_shell(3);
  const double b3 = riesz_dyadic_bound(s3, 2.0 / 3.0);
  CHECK(b3 > 0.0);
  CHECK(std::isfinite(b3));
  CHECK(b3 == doctest::Approx(direct_band_bound(s3, 2.0 / 3.0)).epsilon(1e-12));
  CHECK(riesz_energy(s3, 2.0 / 3.0).dyadic_bound == doctest::Approx(b3).epsilon(1e-15));
}

TEST_CASE("dyadic bound sanity for E <= 500") {
  for (std::int64_t e = 1; e <= 500; ++e) {
    const auto shell = enumerate_shell(e);
    if (shell.size() < 2) continue;
    for (double s : {0.5, 2.0 / 3.0, 1.0}) {
      const auto rep = riesz_energy(shell, s);
      CHECK(rep.value <= std::pow(2.0, s) * rep.dyadic_bound * (1 + 1e-12));
      CHECK(rep.dyadic_bound >= rep.value * (1 - 1e-12));
    }
  }
}

TEST_CASE("riesz symmetry under coordinate permutations and signs") {
  const auto shell = enumerate_shell(101);
  std::vector<LatticePoint> moved;
  for (const auto& p : shell.points()) moved.push_back({-p.z, p.x, -p.y});
  const auto other = LatticeShell::from_points(101, moved);
  for (double s : {0.5, 1.0})
    CHECK(riesz_energy(other, s).value == doctest::Approx(riesz_energy(shell, s).value).epsilon(1e-14));
}

TEST_CASE("riesz limit constant") {
  CHECK(riesz_limit_constant(1.0) == doctest::Approx(1.0));
  CHECK(riesz_limit_constant(0.5) == doctest::Approx(std::sqrt(2.0) / 1.5));
  CHECK_THROWS_AS(riesz_limit_constant(2.0), DomainError);
}

TEST_CASE("cap counts") {
  const auto s1 = enumerate_shell(1);
  const Vec3 e1(1, 0, 0);
  CHECK(cap_count(s1, e1, 0.5) == 1);
  CHECK(cap_count(s1, Vec3(0, 0.6, 0.8), 2.1) == 6);
  CHECK(cap_count(s1, e1, 2.1) == 6);
  CHECK(cap_count(s1, e1, 1.5) == 5);
  CHECK(cap_count(s1, e1, 0.0) == 0);
  CHECK_THROWS_AS(cap_count(s1, Vec3(1, 1, 0), 1.0), DomainError);

  const auto s = enumerate_shell(101);
  const Vec3 d = Vec3(0.3, -0.5, 0.7).normalized();
  std::size_t prev = 0;
  for (double r = 0.0; r <= 2.0 * std::sqrt(101.0) + 0.5; r += 0.05) {
    const auto c = cap_count(s, d, r);
    CHECK(c >= prev);
    prev = c;
  }
  CHECK(prev == s.size());
}

TEST_CASE("equidistribution discrepancy") {
  const auto s1 = enumerate_shell(1);
  const double d1 = equidistribution_discrepancy(s1, 10, 1);
  CHECK(d1 >= 0.0);
  CHECK(d1 <= 1.0);
  CHECK(cap_discrepancy(s1, Vec3(0, 0, 1), 2.1) == doctest::Approx(0.0));
  CHECK(cap_discrepancy(enumerate_shell(101), Vec3(0, 1, 0), 2.5) == doctest::Approx(0.0));
  CHECK(equidistribution_discrepancy(s1, 10, 1) == d1);

  // Frozen from the oracle run at seed 7 with 200 caps.
  const double a = equidistribution_discrepancy(s1, 200, 7);
  const double b = equidistribution_discrepancy(enumerate_shell(101), 200, 7);
  CHECK(a == doctest::Approx(0.22350367779271013).epsilon(1e-12));
  CHECK(b == doctest::Approx(0.02793896936207929).epsilon(1e-12));
  CHECK(b < a);
}
