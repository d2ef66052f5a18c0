#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "torusfield/curve.hpp"

using namespace torusfield;

namespace {

constexpr double kH = 1e-5;

Curve helix() { return make_torus_helix(0.25); }
Curve circle() { return make_planar_circle(0.25); }

double rel(const Vec3& a, const Vec3& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

}  // namespace

TEST_CASE("catalog closed forms") {
  const Curve c = circle();
  CHECK(c.length() == doctest::Approx(kPi / 2));
  CHECK(c.kind() == CurveKind::PlanarCircle);
  CHECK(c.closed());
  for (double t : {0.0, 0.3, 1.0, 1.5}) {
    const FrenetData f = frenet(c, t);
    CHECK(f.kappa == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(std::abs(f.tau) < 1e-9);
  }

  const double rho = 0.25, climb = 1.0 / kTwoPi, w2 = rho * rho + climb * climb;
  const Curve h = helix();
  CHECK(h.length() == doctest::Approx(kTwoPi * std::sqrt(w2)).epsilon(1e-14));
  CHECK(h.closed());
  const FrenetData f0 = frenet(h, 0.0);
  CHECK(f0.kappa == doctest::Approx(rho / w2).epsilon(1e-12));
  CHECK(f0.tau == doctest::Approx(climb / w2).epsilon(1e-12));
  // The helix returns to its start modulo Z^3.
  const Vec3 gap = h.position(h.length()) - h.position(0.0);
  CHECK(rel(gap, Vec3(0, 0, 1)) < 1e-12);

  const Curve s = make_straight_segment(Vec3(0, 0.3, 0.7), Vec3(1, 0.3, 0.7));
  CHECK(s.length() == doctest::Approx(1.0));
  CHECK(s.closed());
  CHECK_FALSE(s.has_nonvanishing_curvature());
  CHECK(min_curvature(s, 50) == 0.0);
  CHECK_THROWS_AS(frenet(s, 0.5), DegenerateError);
  CHECK_FALSE(make_straight_segment(Vec3(0, 0, 0), Vec3(0.5, 0.5, 0)).closed());
}

TEST_CASE("make_curve validation") {
  CHECK_THROWS_AS(make_planar_circle(0.5), DomainError);
  CHECK_THROWS_AS(make_planar_circle(0.0), DomainError);
  CHECK_THROWS_AS(make_torus_helix(0.6), DomainError);
  CHECK_THROWS_AS(make_straight_segment(Vec3(0.2, 0.2, 0.2), Vec3(0.2, 0.2, 0.2)), DomainError);
  CHECK_THROWS_AS(make_straight_segment(Vec3(0, 0, 0), Vec3(1.5, 0, 0)), DomainError);
  const std::vector<double> p{0.2};
  CHECK(make_curve(CurveKind::PlanarCircle, p).length() == doctest::Approx(kTwoPi * 0.2));
  const std::vector<double> seg{0, 0.3, 0.7, 1, 0.3, 0.7};
  CHECK(make_curve(CurveKind::StraightSegment, seg).length() == doctest::Approx(1.0));
  CHECK_THROWS_AS(make_curve(CurveKind::StraightSegment, p), DomainError);
  CHECK_THROWS_AS(make_curve(CurveKind::Custom, p), DomainError);
  CHECK(parse_curve_kind("torus-helix") == CurveKind::TorusHelix);
  CHECK(to_string(CurveKind::StraightSegment) == "straight-segment");
  CHECK_THROWS_AS(parse_curve_kind("spiral"), DomainError);
}

TEST_CASE("unit speed") {
  CHECK(validate_unit_speed(circle(), 100) < 1e-12);
  CHECK(validate_unit_speed(helix(), 100) < 1e-12);
  // gamma(t) = (t^2, 0, 0) on [0, 1]: |gamma'| - 1 = 2t - 1, worst at t = 1.
  const Curve bad = make_custom_curve(1.0, [](double t) {
    return CurveJet{Vec3(t * t, 0, 0), Vec3(2 * t, 0, 0), Vec3(2, 0, 0), Vec3::Zero()};
  });
  CHECK(validate_unit_speed(bad, 101) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(validate_unit_speed(circle(), 1), DomainError);
}

TEST_CASE("frame orthonormality and decomposition of unit vectors") {
  for (const Curve& c : {circle(), helix(), make_torus_helix(0.1, 2.0 / kTwoPi)}) {
    for (int i = 0; i <= 40; ++i) {
      const double t = c.length() * i / 40.0;
      const FrenetData f = frenet(c, t);
      CHECK(std::abs(f.T.norm() - 1) < 1e-9);
      CHECK(std::abs(f.N.norm() - 1) < 1e-9);
      CHECK(std::abs(f.B.norm() - 1) < 1e-9);
      CHECK(std::abs(f.T.dot(f.N)) < 1e-9);
      CHECK(std::abs(f.T.dot(f.B)) < 1e-9);
      CHECK(std::abs(f.N.dot(f.B)) < 1e-9);
      CHECK((f.B - f.T.cross(f.N)).norm() < 1e-9);
      const Vec3 xi = Vec3(std::sin(i), std::cos(3.0 * i), 0.5).normalized();
      const double sum = std::pow(xi.dot(f.T), 2) + std::pow(xi.dot(f.N), 2) + std::pow(xi.dot(f.B), 2);
      CHECK(std::abs(sum - 1) < 1e-9);
    }
  }
}

TEST_CASE("constant curvature and torsion along catalog curves") {
  const Curve h = helix();
  const FrenetData f0 = frenet(h, 0.0);
  const Curve c = circle();
  for (int i = 0; i <= 50; ++i) {
    const FrenetData fh = frenet(h, h.length() * i / 50.0);
    CHECK(std::abs(fh.kappa - f0.kappa) < 1e-9);
    CHECK(std::abs(fh.tau - f0.tau) < 1e-9);
    CHECK(std::abs(frenet(c, c.length() * i / 50.0).tau) < 1e-9);
  }
}

TEST_CASE("jets agree with central differences") {
  for (const Curve& c : {circle(), helix(), make_straight_segment(Vec3(0.1, 0.2, 0.3), Vec3(0.9, 0.4, 0.5))}) {
    for (int i = 1; i < 10; ++i) {
      const double t = c.length() * i / 10.0;
      const CurveJet j = c.jet(t);
      const CurveJet a = c.jet(t - kH), b = c.jet(t + kH);
      CHECK(rel((b.position - a.position) / (2 * kH), j.d1) < 1e-6);
      CHECK(rel((b.d1 - a.d1) / (2 * kH), j.d2) < 1e-6);
      CHECK(rel((b.d2 - a.d2) / (2 * kH), j.d3) < 1e-6);
      // Second derivative straight from positions.
      const Vec3 dd = (b.position - 2 * j.position + a.position) / (kH * kH);
      CHECK((dd - j.d2).norm() < 1e-3 * std::max(1.0, j.d2.norm()));
    }
  }
}

TEST_CASE("Frenet-Serret residuals") {
  for (const Curve& c : {circle(), helix()}) {
    for (int i = 1; i < 10; ++i) {
      const double t = c.length() * i / 10.0;
      const FrenetData f = frenet(c, t);
      const FrenetData a = frenet(c, t - kH), b = frenet(c, t + kH);
      const Vec3 dT = (b.T - a.T) / (2 * kH), dN = (b.N - a.N) / (2 * kH), dB = (b.B - a.B) / (2 * kH);
      CHECK((dT - f.kappa * f.N).norm() < 1e-6);
      CHECK((dN + f.kappa * f.T - f.tau * f.B).norm() < 1e-6);
      CHECK((dB + f.tau * f.N).norm() < 1e-6);
    }
  }
}

TEST_CASE("translation") {
  const Curve h = helix();
  const Vec3 off(0.1, -0.2, 0.3);
  const Curve moved = h.translated(off);
  CHECK(moved.length() == h.length());
  CHECK(moved.kind() == h.kind());
  CHECK(rel(moved.position(0.4), h.position(0.4) + off) < 1e-15);
  CHECK(rel(moved.jet(0.4).d2, h.jet(0.4).d2) < 1e-15);
}
