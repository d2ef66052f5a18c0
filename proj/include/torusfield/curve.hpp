#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "torusfield/common.hpp"

namespace torusfield {

enum class CurveKind { PlanarCircle, TorusHelix, StraightSegment, Custom };

std::string_view to_string(CurveKind kind);
CurveKind parse_curve_kind(std::string_view name);

/// Position and first three derivatives of a unit-speed parameterisation.
struct CurveJet {
  Vec3 position;
  Vec3 d1;
  Vec3 d2;
  Vec3 d3;
};

struct FrenetData {
  Vec3 T;
  Vec3 N;
  Vec3 B;
  double kappa = 0.0;
  double tau = 0.0;
};

/// Arc-length parameterised curve t in [0, L] -> lift of the torus to R^3.
///
/// Curves carry closed-form jets. `closed()` means gamma(L) - gamma(0) is an
/// integer vector, so the curve closes up in the torus and zero counting treats the
/// parameter interval as half-open.
class Curve {
 public:
  using JetFunction = std::function<CurveJet(double)>;

  Curve(CurveKind kind, double length, JetFunction jet, bool closed, std::vector<double> params = {});

  CurveKind kind() const { return kind_; }
  double length() const { return length_; }
  bool closed() const { return closed_; }
  const std::vector<double>& params() const { return params_; }

  CurveJet jet(double t) const { return jet_(t); }
  Vec3 position(double t) const { return jet_(t).position; }

  /// Same curve shifted by `offset` in the ambient space.
  Curve translated(const Vec3& offset) const;

  /// Catalog kinds certified to have curvature bounded away from zero.
  bool has_nonvanishing_curvature() const {
    return kind_ == CurveKind::PlanarCircle || kind_ == CurveKind::TorusHelix;
  }

 private:
  CurveKind kind_;
  double length_;
  JetFunction jet_;
  bool closed_;
  std::vector<double> params_;
};

inline constexpr double kHelixClimb = 1.0 / kTwoPi;

/// Circle of radius rho in (0, 1/2) centred at (1/2, 1/2, plane_offset) in a
/// horizontal plane.
Curve make_planar_circle(double radius, double plane_offset = 0.5);

/// One turn of (1/2 + rho cos u, 1/2 + rho sin u, c u); with c = 1/(2 pi) the
/// height winds once around the torus.
Curve make_torus_helix(double radius, double climb = kHelixClimb);

/// Oracle-only segment between two points of the closed unit cell.
Curve make_straight_segment(const Vec3& from, const Vec3& to);

/// Caller-provided jets; must already be unit speed.
Curve make_custom_curve(double length, Curve::JetFunction jet, bool closed = false);

/// Dispatch on a kind tag with the flat parameter list used by config files:
///   planar-circle:    radius [, plane_offset]
///   torus-helix:      radius [, climb]
///   straight-segment: x0, y0, z0, x1, y1, z1
Curve make_curve(CurveKind kind, std::span<const double> params);

/// Frenet-Serret frame at t. Throws DegenerateError where curvature vanishes.
FrenetData frenet(const Curve& curve, double t);

/// max | |gamma'(t)| - 1 | on an equispaced grid of `samples` points.
double validate_unit_speed(const Curve& curve, int samples);

/// Minimum of |gamma''| over an equispaced grid.
double min_curvature(const Curve& curve, int samples);

}  // namespace torusfield
