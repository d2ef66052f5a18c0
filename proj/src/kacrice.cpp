#include "torusfield/kacrice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "torusfield/parallel.hpp"

namespace torusfield {

KacRiceParams make_kac_rice_params(std::int64_t energy) {
  if (energy < 1) throw DomainError("KacRiceParams: energy must be positive");
  return {energy, 4.0 * kPi * kPi * static_cast<double>(energy) / 3.0, 3};
}

double k1_density(std::int64_t energy) {
  if (energy < 1) throw DomainError("k1_density: energy must be positive");
  return 2.0 / std::sqrt(3.0) * std::sqrt(static_cast<double>(energy));
}

double expected_count(double length, std::int64_t energy, bool strict) {
  if (length < 0.0) throw DomainError("expected_count: negative length");
  if (length == 0.0 && strict) throw DomainError("expected_count: zero-length curve");
  return length * k1_density(energy);
}

double expected_count(const Curve& curve, std::int64_t energy) { return expected_count(curve.length(), energy, true); }

K2Terms k2_terms(const CovarianceJet& jet, const KacRiceParams& params) {
  const double omr = jet.one_minus_r;
  if (!(omr > 0.0 && omr < 2.0)) throw DegenerateError("k2_correlation: |r| >= 1, the pair is degenerate");
  const double one_minus_r2 = omr * (2.0 - omr);
  const double a = params.alpha * one_minus_r2;

  auto radicand = [&](double ri) {
    const double v = a - ri * ri;
    if (v < -1e-12 * (a + ri * ri)) throw DomainError("k2_correlation: jet violates alpha(1 - r^2) >= r_i^2");
    return std::max(v, 0.0);
  };
  const double m = std::sqrt(radicand(jet.r1)) * std::sqrt(radicand(jet.r2));
  const double numerator = jet.r12 * one_minus_r2 + jet.r * jet.r1 * jet.r2;

  K2Terms out;
  out.amplitude = m;
  if (m == 0.0) {
    if (std::abs(numerator) > 1e-12 * (a + std::abs(jet.r12) * one_minus_r2))
      throw DegenerateError("k2_correlation: M = 0 with a nonzero correlation numerator");
    return out;
  }
  double rho = numerator / m;
  out.rho_overshoot = std::max(0.0, std::abs(rho) - 1.0);
  rho = std::clamp(rho, -1.0, 1.0);
  out.rho = rho;
  const double g = std::sqrt(1.0 - rho * rho) + rho * std::asin(rho);
  out.value = m * g / (kPi * kPi * one_minus_r2 * std::sqrt(one_minus_r2));
  return out;
}

double k2_correlation(const CovarianceJet& jet, const KacRiceParams& params) { return k2_terms(jet, params).value; }

namespace {

std::size_t quadrature_intervals(const Curve& curve, std::int64_t energy, int grid_per_wavelength) {
  const auto waves = static_cast<std::size_t>(std::ceil(curve.length() * std::sqrt(static_cast<double>(energy))));
  return std::max<std::size_t>(waves, 1) * static_cast<std::size_t>(grid_per_wavelength);
}

// A = [C S] so that (2/N) A_i . A_j = r(t_i, t_j). Likewise
// Q = [S -C] gives (2/N) Q_i . A_j = sin(theta_i - theta_j) summed over the shell.
struct BlockFactors {
  Eigen::MatrixXd a;      // [C S]
  Eigen::MatrixXd ag;     // [C.G S.G]
  Eigen::MatrixXd q;      // [S -C]
  Eigen::MatrixXd qg;     // [S.G -C.G]
};

BlockFactors make_factors(const RestrictedBasis& basis) {
  const auto n = basis.points();
  const auto m = basis.modes();
  BlockFactors f;
  f.a.resize(n, 2 * m);
  f.a << basis.cos(), basis.sin();
  const Eigen::MatrixXd cg = basis.cos().cwiseProduct(basis.rate());
  const Eigen::MatrixXd sg = basis.sin().cwiseProduct(basis.rate());
  f.ag.resize(n, 2 * m);
  f.ag << cg, sg;
  f.q.resize(n, 2 * m);
  f.q << basis.sin(), -basis.cos();
  f.qg.resize(n, 2 * m);
  f.qg << sg, -cg;
  return f;
}

constexpr Eigen::Index kBlockRows = 128;

}  // namespace

SecondMoments second_moments(const LatticeShell& shell, const Curve& curve, int grid_per_wavelength,
                             unsigned threads) {
  if (grid_per_wavelength < 4) throw DomainError("second_moments: grid_per_wavelength must be at least 4");
  if (shell.empty()) throw DegenerateError("second_moments: empty shell");
  const std::int64_t e = shell.energy();
  const std::size_t n = quadrature_intervals(curve, e, grid_per_wavelength);
  const double h = curve.length() / static_cast<double>(n);

  std::vector<double> times(n + 1);
  for (std::size_t i = 0; i <= n; ++i) times[i] = curve.length() * static_cast<double>(i) / static_cast<double>(n);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n + 1), h);
  w[0] = w[static_cast<Eigen::Index>(n)] = 0.5 * h;

  const RestrictedBasis basis(shell, curve, times);
  const BlockFactors f = make_factors(basis);
  const double scale = 2.0 / static_cast<double>(shell.size());
  const double ed = static_cast<double>(e);

  const auto points = static_cast<Eigen::Index>(n + 1);
  const auto blocks = static_cast<std::size_t>((points + kBlockRows - 1) / kBlockRows);
  std::vector<std::array<double, 4>> partial(blocks);

  parallel_for(blocks, threads, [&](std::size_t b) {
    const Eigen::Index lo = static_cast<Eigen::Index>(b) * kBlockRows;
    const Eigen::Index rows = std::min(kBlockRows, points - lo);
    const Eigen::MatrixXd r = scale * f.a.middleRows(lo, rows) * f.a.transpose();
    const Eigen::MatrixXd r1 = -scale * f.qg.middleRows(lo, rows) * f.a.transpose();
    const Eigen::MatrixXd r2 = scale * f.q.middleRows(lo, rows) * f.ag.transpose();
    const Eigen::MatrixXd r12 = scale * f.ag.middleRows(lo, rows) * f.ag.transpose();
    const Eigen::VectorXd wr = w.segment(lo, rows);
    auto weighted = [&](const Eigen::MatrixXd& m) { return (wr.transpose() * m.cwiseAbs2() * w).value(); };
    partial[b] = {weighted(r), weighted(r1) / ed, weighted(r2) / ed, weighted(r12) / (ed * ed)};
  });

  std::array<CompensatedSum, 4> sums;
  for (const auto& p : partial)
    for (std::size_t k = 0; k < 4; ++k) sums[k].add(p[k]);
  SecondMoments out;
  out.r_sq = sums[0].value();
  out.r1_sq = sums[1].value();
  out.r2_sq = sums[2].value();
  out.r12_sq = sums[3].value();
  out.intervals = n;
  out.step = h;
  return out;
}

double r2_moment(const LatticeShell& shell, const Curve& curve, int grid_per_wavelength, unsigned threads) {
  return second_moments(shell, curve, grid_per_wavelength, threads).total();
}

double variance_upper_proxy(const LatticeShell& shell, const Curve& curve, int grid_per_wavelength,
                            unsigned threads) {
  return r2_moment(shell, curve, grid_per_wavelength, threads);
}

double SingularReport::ratio() const {
  return static_cast<double>(singular_pairs.size()) / (static_cast<double>(energy) * r_sq_integral);
}

SingularReport singular_cubes(const LatticeShell& shell, const Curve& curve, double c0, int probe,
                              int grid_per_wavelength, unsigned threads) {
  if (!(c0 > 0.0 && c0 <= 1.0)) throw DomainError("singular_cubes: c0 must lie in (0, 1]");
  if (probe < 2) throw DomainError("singular_cubes: probe grid needs at least two points per side");
  if (shell.empty()) throw DegenerateError("singular_cubes: empty shell");

  SingularReport rep;
  rep.c0 = c0;
  rep.energy = shell.energy();
  const double sqrt_e = std::sqrt(static_cast<double>(shell.energy()));
  rep.k = static_cast<int>(std::floor(curve.length() * sqrt_e / c0)) + 1;
  rep.delta0 = curve.length() / rep.k;

  // Shared probe lattice: node q sits at q * delta0 / (probe - 1).
  const int sub = probe - 1;
  const int nodes = rep.k * sub + 1;
  std::vector<double> times(static_cast<std::size_t>(nodes));
  for (int q = 0; q < nodes; ++q) times[static_cast<std::size_t>(q)] = rep.delta0 * q / sub;
  const RestrictedBasis basis(shell, curve, times);
  const BlockFactors f = make_factors(basis);
  const double scale = 2.0 / static_cast<double>(shell.size());

  auto cubes_of = [&](int q, int out[2]) {
    int c = 0;
    if (q % sub == 0 && q > 0) out[c++] = q / sub - 1;
    if (q / sub < rep.k) out[c++] = q / sub;
    return c;
  };

  const auto k = static_cast<std::size_t>(rep.k);
  const auto blocks = static_cast<std::size_t>((nodes + kBlockRows - 1) / kBlockRows);
  std::vector<std::vector<std::uint8_t>> marks(blocks);
  parallel_for(blocks, threads, [&](std::size_t b) {
    auto& mark = marks[b];
    mark.assign(k * k, 0);
    const Eigen::Index lo = static_cast<Eigen::Index>(b) * kBlockRows;
    const Eigen::Index rows = std::min<Eigen::Index>(kBlockRows, nodes - lo);
    const Eigen::MatrixXd r = scale * f.a.middleRows(lo, rows) * f.a.transpose();
    for (Eigen::Index i = 0; i < rows; ++i) {
      int ci[2];
      const int ni = cubes_of(static_cast<int>(lo + i), ci);
      for (Eigen::Index j = 0; j < r.cols(); ++j) {
        if (std::abs(r(i, j)) <= 0.5) continue;
        int cj[2];
        const int nj = cubes_of(static_cast<int>(j), cj);
        for (int a = 0; a < ni; ++a)
          for (int c = 0; c < nj; ++c) mark[static_cast<std::size_t>(ci[a]) * k + static_cast<std::size_t>(cj[c])] = 1;
      }
    }
  });

  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      bool hit = false;
      for (const auto& m : marks) hit = hit || m[i * k + j];
      if (hit) rep.singular_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }

  rep.r_sq_integral = second_moments(shell, curve, grid_per_wavelength, threads).r_sq;
  return rep;
}

}  // namespace torusfield
