#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "torusfield/wave.hpp"

namespace torusfield {

/// Parameter interval with explicit endpoint inclusion.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  bool include_lo = true;
  bool include_hi = false;

  bool contains(double t) const {
    return (include_lo ? t >= lo : t > lo) && (include_hi ? t <= hi : t < hi);
  }
};

struct ZeroCount {
  std::int64_t count = 0;
  std::int64_t suspicious = 0;  // sign-preserving near-tangencies seen on the grid
  double resolution = 0.0;      // grid step actually used
  std::vector<double> roots;    // refined zero locations, ascending
};

/// Thresholds of the grid scanner.
struct ZeroScanOptions {
  double zero_tolerance = 1e-12;      // |f| below this at a grid point is a zero
  double tangency_tolerance = 1e-6;   // local |f| minimum below this * local scale is suspicious
  double bisection_tolerance = 1e-12; // relative to the interval length
  bool parabolic_check = true;        // also flag minima whose parabola dips through zero
  int refine_levels = 2;              // rescans of each flagged site on a finer subgrid
  int refine_subdivisions = 32;       // subgrid points across the two intervals around a site
};

/// Counts zeros of f on `domain` from samples on a uniform grid
/// t_i = domain.lo + i h, i = 0..n with t_n = domain.hi.
///
/// A strict sign change between neighbouring samples is one zero, polished by
/// bisection. A run of samples with |f| < zero_tolerance is one zero whatever
/// the signs on either side. Endpoint samples are honoured according to the
/// interval's inclusion flags. Each suspicious site is rescanned on a finer
/// subgrid of its two neighbouring intervals, and any sign changes found there
/// are counted; `suspicious` still reports the sites flagged on the input grid.
ZeroCount count_zeros_on_grid(std::span<const double> samples, const Interval& domain,
                              const std::function<double(double)>& f, const ZeroScanOptions& options = {});

/// Samples f on a grid of step at most `max_step` and scans it.
ZeroCount count_zeros(const std::function<double(double)>& f, const Interval& domain, double max_step,
                      const ZeroScanOptions& options = {});

/// Zeros of the restricted process on [0, L) for closed curves and [0, L]
/// otherwise, at a grid of step 1 / (sqrt(E) points_per_wavelength) or finer.
ZeroCount count_zeros(const RestrictedProcess& process, std::int64_t energy, int points_per_wavelength,
                      const ZeroScanOptions& options = {});

/// Parameter interval the process is counted on.
Interval counting_domain(const Curve& curve);

/// Grid used by count_zeros for the given curve and resolution.
std::vector<double> counting_grid(const Curve& curve, std::int64_t energy, int points_per_wavelength);

/// #{t in range : sin(2 pi k t) = 0} = #{j in Z : j / (2k) in range}.
std::int64_t analytic_zero_count(int k, const Interval& range);

}  // namespace torusfield
