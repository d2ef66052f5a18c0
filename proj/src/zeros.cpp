#include "torusfield/zeros.hpp"

#include <algorithm>
#include <cmath>

namespace torusfield {

namespace {

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

double bisect(const std::function<double(double)>& f, double lo, double hi, double f_lo, double tol) {
  const int s_lo = sign_of(f_lo);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    const int sm = sign_of(fm);
    if (sm == 0) return mid;
    if (sm == s_lo)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Sign-preserving local minimum of |f| that either falls below the relative
// tangency threshold or whose interpolating parabola dips through zero.
bool near_tangency(std::span<const double> s, std::size_t i, const ZeroScanOptions& opt) {
  const double a = std::abs(s[i - 1]), b = std::abs(s[i]), c = std::abs(s[i + 1]);
  if (b > a || b > c) return false;
  constexpr std::size_t window = 16;
  const std::size_t lo = i > window ? i - window : 0;
  const std::size_t hi = std::min(s.size() - 1, i + window);
  double scale = 0.0;
  for (std::size_t j = lo; j <= hi; ++j) scale = std::max(scale, std::abs(s[j]));
  if (b < opt.tangency_tolerance * scale) return true;
  if (!opt.parabolic_check) return false;
  const double curvature = a - 2.0 * b + c;
  if (curvature <= 0.0) return false;
  const double slope = 0.5 * (c - a);
  const double x = -slope / curvature;
  const double minimum = b - slope * slope / (2.0 * curvature);
  return std::abs(x) <= 1.0 && minimum < 0.0;
}

}  // namespace

ZeroCount count_zeros_on_grid(std::span<const double> samples, const Interval& domain,
                              const std::function<double(double)>& f, const ZeroScanOptions& options) {
  ZeroCount out;
  if (samples.size() < 2 || !(domain.hi > domain.lo)) return out;
  const std::size_t n = samples.size() - 1;
  const double h = (domain.hi - domain.lo) / static_cast<double>(n);
  out.resolution = h;
  auto t_at = [&](std::size_t i) { return i == n ? domain.hi : domain.lo + h * static_cast<double>(i); };
  auto tiny = [&](std::size_t i) { return std::abs(samples[i]) < options.zero_tolerance; };

  if (std::all_of(samples.begin(), samples.end(), [&](double v) { return std::abs(v) < options.zero_tolerance; })) {
    out.suspicious = static_cast<std::int64_t>(samples.size());
    return out;
  }

  const double tol = options.bisection_tolerance * (domain.hi - domain.lo);
  int prev_sign = 0;
  bool in_run = false;
  std::size_t run_start = 0;

  auto close_run = [&](std::size_t first, std::size_t last) {
    if (first == 0 && !domain.include_lo) return;
    if (last == n && !domain.include_hi) return;
    std::size_t best = first;
    for (std::size_t j = first; j <= last; ++j)
      if (std::abs(samples[j]) < std::abs(samples[best])) best = j;
    ++out.count;
    out.roots.push_back(t_at(best));
  };

  for (std::size_t i = 0; i <= n; ++i) {
    if (tiny(i)) {
      if (!in_run) {
        in_run = true;
        run_start = i;
      }
      continue;
    }
    const int sign = sign_of(samples[i]);
    if (in_run) {
      close_run(run_start, i - 1);
      in_run = false;
    } else if (prev_sign != 0 && sign != prev_sign) {
      ++out.count;
      out.roots.push_back(bisect(f, t_at(i - 1), t_at(i), samples[i - 1], tol));
    }
    prev_sign = sign;
  }
  if (in_run) close_run(run_start, n);

  std::size_t last_refined = 0;
  bool refined_any = false;
  for (std::size_t i = 1; i < n; ++i) {
    if (tiny(i - 1) || tiny(i) || tiny(i + 1)) continue;
    const int s = sign_of(samples[i]);
    if (sign_of(samples[i - 1]) != s || sign_of(samples[i + 1]) != s) continue;
    if (!near_tangency(samples, i, options)) continue;
    ++out.suspicious;
    if (options.refine_levels < 1 || (refined_any && last_refined + 1 == i)) continue;
    refined_any = true;
    last_refined = i;
    // Both ends share the sign of the site, so every zero found inside is new.
    const Interval local{t_at(i - 1), t_at(i + 1), false, false};
    const auto m = static_cast<std::size_t>(std::max(options.refine_subdivisions, 4));
    std::vector<double> sub(m + 1);
    sub[0] = samples[i - 1];
    sub[m] = samples[i + 1];
    for (std::size_t j = 1; j < m; ++j)
      sub[j] = f(local.lo + (local.hi - local.lo) * static_cast<double>(j) / static_cast<double>(m));
    ZeroScanOptions deeper = options;
    --deeper.refine_levels;
    const ZeroCount extra = count_zeros_on_grid(sub, local, f, deeper);
    out.count += extra.count;
    out.roots.insert(out.roots.end(), extra.roots.begin(), extra.roots.end());
  }
  if (refined_any) std::sort(out.roots.begin(), out.roots.end());
  return out;
}

ZeroCount count_zeros(const std::function<double(double)>& f, const Interval& domain, double max_step,
                      const ZeroScanOptions& options) {
  if (!(max_step > 0.0)) throw DomainError("count_zeros: step must be positive");
  if (!(domain.hi > domain.lo)) return {};
  const auto n = static_cast<std::size_t>(std::ceil((domain.hi - domain.lo) / max_step));
  std::vector<double> samples(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = i == n ? domain.hi : domain.lo + (domain.hi - domain.lo) * static_cast<double>(i) / n;
    samples[i] = f(t);
  }
  return count_zeros_on_grid(samples, domain, f, options);
}

Interval counting_domain(const Curve& curve) { return {0.0, curve.length(), true, !curve.closed()}; }

std::vector<double> counting_grid(const Curve& curve, std::int64_t energy, int points_per_wavelength) {
  if (points_per_wavelength < 16) throw DomainError("count_zeros: points_per_wavelength must be at least 16");
  const double step = 1.0 / (std::sqrt(static_cast<double>(energy)) * points_per_wavelength);
  const auto n = static_cast<std::size_t>(std::ceil(curve.length() / step));
  std::vector<double> t(n + 1);
  for (std::size_t i = 0; i <= n; ++i) t[i] = curve.length() * static_cast<double>(i) / static_cast<double>(n);
  t[n] = curve.length();
  return t;
}

ZeroCount count_zeros(const RestrictedProcess& process, std::int64_t energy, int points_per_wavelength,
                      const ZeroScanOptions& options) {
  const auto grid = counting_grid(process.curve(), energy, points_per_wavelength);
  std::vector<double> samples(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) samples[i] = process.value(grid[i]);
  return count_zeros_on_grid(samples, counting_domain(process.curve()),
                             [&process](double t) { return process.value(t); }, options);
}

std::int64_t analytic_zero_count(int k, const Interval& range) {
  if (k < 1) throw DomainError("analytic_zero_count: k must be positive");
  if (range.hi < range.lo) return 0;
  const double x = 2.0 * k * range.lo;
  const double y = 2.0 * k * range.hi;
  const auto first = static_cast<std::int64_t>(range.include_lo ? std::ceil(x) : std::floor(x) + 1.0);
  const auto last = static_cast<std::int64_t>(range.include_hi ? std::floor(y) : std::ceil(y) - 1.0);
  return std::max<std::int64_t>(0, last - first + 1);
}

}  // namespace torusfield
