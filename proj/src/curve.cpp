#include "torusfield/curve.hpp"

#include <cmath>
#include <limits>

namespace torusfield {

std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::PlanarCircle: return "planar-circle";
    case CurveKind::TorusHelix: return "torus-helix";
    case CurveKind::StraightSegment: return "straight-segment";
    case CurveKind::Custom: return "custom";
  }
  return "custom";
}

CurveKind parse_curve_kind(std::string_view name) {
  if (name == "planar-circle") return CurveKind::PlanarCircle;
  if (name == "torus-helix") return CurveKind::TorusHelix;
  if (name == "straight-segment") return CurveKind::StraightSegment;
  if (name == "custom") return CurveKind::Custom;
  throw DomainError("unknown curve kind '" + std::string(name) + "'");
}

Curve::Curve(CurveKind kind, double length, JetFunction jet, bool closed, std::vector<double> params)
    : kind_(kind), length_(length), jet_(std::move(jet)), closed_(closed), params_(std::move(params)) {
  if (!(length_ > 0.0) || !std::isfinite(length_)) throw DomainError("curve length must be positive");
  if (!jet_) throw DomainError("curve needs a jet function");
}

Curve Curve::translated(const Vec3& offset) const {
  auto base = jet_;
  return Curve(kind_, length_,
               [base, offset](double t) {
                 CurveJet j = base(t);
                 j.position += offset;
                 return j;
               },
               closed_, params_);
}

Curve make_planar_circle(double radius, double plane_offset) {
  if (!(radius > 0.0 && radius < 0.5))
    throw DomainError("planar-circle: radius must lie in (0, 1/2) to stay embedded in the torus");
  const double rho = radius;
  const double z = plane_offset;
  return Curve(CurveKind::PlanarCircle, kTwoPi * rho,
               [rho, z](double t) {
                 const double u = t / rho;
                 const double c = std::cos(u), s = std::sin(u);
                 CurveJet j;
                 j.position = Vec3(0.5 + rho * c, 0.5 + rho * s, z);
                 j.d1 = Vec3(-s, c, 0.0);
                 j.d2 = Vec3(-c, -s, 0.0) / rho;
                 j.d3 = Vec3(s, -c, 0.0) / (rho * rho);
                 return j;
               },
               true, {radius, plane_offset});
}

Curve make_torus_helix(double radius, double climb) {
  if (!(radius > 0.0 && radius < 0.5))
    throw DomainError("torus-helix: radius must lie in (0, 1/2) to stay embedded in the torus");
  if (!(climb > 0.0)) throw DomainError("torus-helix: climb must be positive");
  const double rho = radius;
  const double c = climb;
  const double w = std::sqrt(rho * rho + c * c);
  const double winding = kTwoPi * c;
  const bool closed = std::abs(winding - std::round(winding)) < 1e-12;
  return Curve(CurveKind::TorusHelix, kTwoPi * w,
               [rho, c, w](double t) {
                 const double u = t / w;
                 const double cu = std::cos(u), su = std::sin(u);
                 CurveJet j;
                 j.position = Vec3(0.5 + rho * cu, 0.5 + rho * su, c * u);
                 j.d1 = Vec3(-rho * su, rho * cu, c) / w;
                 j.d2 = Vec3(-rho * cu, -rho * su, 0.0) / (w * w);
                 j.d3 = Vec3(rho * su, -rho * cu, 0.0) / (w * w * w);
                 return j;
               },
               closed, {radius, climb});
}

Curve make_straight_segment(const Vec3& from, const Vec3& to) {
  for (int i = 0; i < 3; ++i) {
    if (from[i] < 0.0 || from[i] > 1.0 || to[i] < 0.0 || to[i] > 1.0)
      throw DomainError("straight-segment: endpoints must lie in the closed unit cell");
  }
  const Vec3 delta = to - from;
  const double length = delta.norm();
  if (!(length > 0.0)) throw DomainError("straight-segment: zero-length segment");
  const Vec3 dir = delta / length;
  bool closed = true;
  for (int i = 0; i < 3; ++i) closed = closed && std::abs(delta[i] - std::round(delta[i])) < 1e-12;
  return Curve(CurveKind::StraightSegment, length,
               [from, dir](double t) {
                 CurveJet j;
                 j.position = from + t * dir;
                 j.d1 = dir;
                 j.d2 = Vec3::Zero();
                 j.d3 = Vec3::Zero();
                 return j;
               },
               closed, {from.x(), from.y(), from.z(), to.x(), to.y(), to.z()});
}

Curve make_custom_curve(double length, Curve::JetFunction jet, bool closed) {
  return Curve(CurveKind::Custom, length, std::move(jet), closed);
}

Curve make_curve(CurveKind kind, std::span<const double> params) {
  switch (kind) {
    case CurveKind::PlanarCircle:
      if (params.size() == 1) return make_planar_circle(params[0]);
      if (params.size() == 2) return make_planar_circle(params[0], params[1]);
      throw DomainError("planar-circle expects radius [, plane_offset]");
    case CurveKind::TorusHelix:
      if (params.size() == 1) return make_torus_helix(params[0]);
      if (params.size() == 2) return make_torus_helix(params[0], params[1]);
      throw DomainError("torus-helix expects radius [, climb]");
    case CurveKind::StraightSegment:
      if (params.size() != 6) throw DomainError("straight-segment expects six endpoint coordinates");
      return make_straight_segment(Vec3(params[0], params[1], params[2]), Vec3(params[3], params[4], params[5]));
    case CurveKind::Custom:
      throw DomainError("custom curves carry caller-provided jets; use make_custom_curve");
  }
  throw DomainError("unknown curve kind");
}

FrenetData frenet(const Curve& curve, double t) {
  const CurveJet j = curve.jet(t);
  FrenetData f;
  f.T = j.d1;
  f.kappa = j.d2.norm();
  if (!(f.kappa > 1e-12)) throw DegenerateError("frenet: curvature vanishes, normal undefined");
  f.N = j.d2 / f.kappa;
  f.B = f.T.cross(f.N);
  // Sign fixed by B' = -tau N for unit-speed curves.
  f.tau = j.d3.dot(f.B) / f.kappa;
  return f;
}

double validate_unit_speed(const Curve& curve, int samples) {
  if (samples < 2) throw DomainError("validate_unit_speed: need at least two samples");
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = curve.length() * i / (samples - 1);
    worst = std::max(worst, std::abs(curve.jet(t).d1.norm() - 1.0));
  }
  return worst;
}

double min_curvature(const Curve& curve, int samples) {
  if (samples < 2) throw DomainError("min_curvature: need at least two samples");
  double lowest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double t = curve.length() * i / (samples - 1);
    lowest = std::min(lowest, curve.jet(t).d2.norm());
  }
  return lowest;
}

}  // namespace torusfield
