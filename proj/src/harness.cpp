#include "torusfield/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <random>

#include "torusfield/kacrice.hpp"
#include "torusfield/oscillatory.hpp"
#include "torusfield/parallel.hpp"
#include "torusfield/rng.hpp"

namespace torusfield {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::int64_t energy, std::int64_t trial) {
  return derive_seed(master_seed, {static_cast<std::uint64_t>(energy), static_cast<std::uint64_t>(trial)});
}

TrialCounts sample_zero_counts(const LatticeShell& shell, const Curve& curve, int trials, std::uint64_t master_seed,
                               int points_per_wavelength, unsigned threads) {
  if (trials < 1) throw DomainError("sample_zero_counts: trials must be positive");
  const auto grid = counting_grid(curve, shell.energy(), points_per_wavelength);
  const RestrictedBasis basis(shell, curve, grid);
  const Interval domain = counting_domain(curve);

  TrialCounts out;
  out.counts.resize(static_cast<std::size_t>(trials));
  out.suspicious.resize(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t i) {
    const RestrictedProcess process(sample_wave(shell, trial_seed(master_seed, shell.energy(), static_cast<std::int64_t>(i))), curve);
    const Eigen::VectorXd values = basis.values(process.wave());
    const ZeroCount zc = count_zeros_on_grid(std::span<const double>(values.data(), static_cast<std::size_t>(values.size())),
                                             domain, [&process](double t) { return process.value(t); });
    out.counts[i] = zc.count;
    out.suspicious[i] = zc.suspicious;
    if (i == 0) out.resolution = zc.resolution;
  });
  return out;
}

double sample_mean(std::span<const double> x) {
  CompensatedSum s;
  for (double v : x) s.add(v);
  return x.empty() ? 0.0 : s.value() / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
  if (x.size() < 2) return std::nan("");
  const double m = sample_mean(x);
  CompensatedSum s;
  for (double v : x) s.add((v - m) * (v - m));
  return s.value() / static_cast<double>(x.size() - 1);
}

ConfidenceInterval bootstrap_variance(std::span<const double> x, int resamples, std::uint64_t seed, double level) {
  if (x.size() < 2 || resamples < 1) return {std::nan(""), std::nan("")};
  auto engine = make_engine(seed);
  std::uniform_int_distribution<std::size_t> pick(0, x.size() - 1);
  std::vector<double> stats(static_cast<std::size_t>(resamples));
  std::vector<double> draw(x.size());
  for (auto& s : stats) {
    for (auto& d : draw) d = x[pick(engine)];
    s = sample_variance(draw);
  }
  std::sort(stats.begin(), stats.end());
  const double tail = 0.5 * (1.0 - level);
  auto at = [&](double q) {
    const auto idx = static_cast<std::size_t>(std::clamp(std::floor(q * (stats.size() - 1) + 0.5), 0.0,
                                                         static_cast<double>(stats.size() - 1)));
    return stats[idx];
  };
  return {at(tail), at(1.0 - tail)};
}

namespace {

double sqrt_e(std::int64_t e) { return std::sqrt(static_cast<double>(e)); }

std::vector<std::pair<std::string, std::string>> settings_for(const ExperimentConfig& config, const char* experiment,
                                                              const std::vector<std::int64_t>& energies) {
  ExperimentConfig c = config;
  c.experiment = experiment;
  c.energies = energies;
  c.output.clear();
  c.table.clear();
  return config_entries(c);
}

struct Stamp {
  std::string timestamp;
  explicit Stamp(const RunContext& ctx) : timestamp(ctx.timestamp.empty() ? utc_timestamp() : ctx.timestamp) {}
};

ExperimentRecord base_record(const ExperimentConfig& config, const char* experiment, std::int64_t energy,
                             std::int64_t shell_size, const Curve* curve, const Stamp& stamp) {
  ExperimentRecord r;
  r.experiment = experiment;
  r.energy = energy;
  r.shell_size = shell_size;
  if (curve) {
    r.curve_kind = std::string(to_string(curve->kind()));
    r.curve_params = curve->params();
    r.length = curve->length();
  }
  r.seed = config.master_seed;
  r.timestamp = stamp.timestamp;
  r.code_version = version();
  r.settings = settings_for(config, experiment, energy > 0 ? std::vector<std::int64_t>{energy} : config.energies);
  return r;
}

ExperimentRecord rejection(const ExperimentConfig& config, const char* experiment, std::int64_t energy,
                           const Curve* curve, const Stamp& stamp, std::string reason) {
  ExperimentRecord r = base_record(config, experiment, energy, 0, curve, stamp);
  r.status = "rejected";
  r.reason = std::move(reason);
  return r;
}

// Admissible energies in config order; a rejection record for every other one.
std::vector<std::int64_t> admissible_energies(const ExperimentConfig& config, const char* experiment,
                                              const Curve* curve, const Stamp& stamp,
                                              std::vector<ExperimentRecord>& out) {
  std::vector<std::int64_t> keep;
  for (auto e : config.energies) {
    if (is_admissible(e))
      keep.push_back(e);
    else
      out.push_back(rejection(config, experiment, e, curve, stamp, kInadmissibleReason));
  }
  return keep;
}

void require_curvature(const Curve& curve, const char* experiment) {
  if (!curve.has_nonvanishing_curvature())
    throw ConfigError(std::string(experiment) + ": curve kind '" + std::string(to_string(curve.kind())) +
                      "' has vanishing curvature; use planar-circle or torus-helix");
}

std::vector<double> normalized_counts(const TrialCounts& tc, std::int64_t energy) {
  std::vector<double> z(tc.counts.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = static_cast<double>(tc.counts[i]) / sqrt_e(energy);
  return z;
}

void add_trial_records(const ExperimentConfig& config, const char* experiment, const LatticeShell& shell,
                       const Curve& curve, const Stamp& stamp, const TrialCounts& tc,
                       std::vector<ExperimentRecord>& out) {
  if (!config.record_trials || tc.counts.size() < 2) return;
  for (std::size_t i = 0; i < tc.counts.size(); ++i) {
    ExperimentRecord r = base_record(config, experiment, shell.energy(), static_cast<std::int64_t>(shell.size()),
                                     &curve, stamp);
    r.trial = static_cast<std::int64_t>(i);
    r.seed = trial_seed(config.master_seed, shell.energy(), r.trial);
    r.set("zero_count", static_cast<double>(tc.counts[i]));
    r.set("zero_count_normalized", static_cast<double>(tc.counts[i]) / sqrt_e(shell.energy()));
    r.set("suspicious", static_cast<double>(tc.suspicious[i]));
    out.push_back(std::move(r));
  }
}

double total(const std::vector<std::int64_t>& xs) {
  double s = 0.0;
  for (auto v : xs) s += static_cast<double>(v);
  return s;
}

}  // namespace

std::vector<ExperimentRecord> run_expectation(const ExperimentConfig& config, const RunContext& ctx) {
  const Stamp stamp(ctx);
  const Curve curve = config.curve.build();
  require_curvature(curve, "expectation");
  std::vector<ExperimentRecord> out;
  for (auto e : admissible_energies(config, "expectation", &curve, stamp, out)) {
    const LatticeShell shell = enumerate_shell(e);
    const TrialCounts tc = sample_zero_counts(shell, curve, config.trials, config.master_seed,
                                              config.points_per_wavelength, ctx.threads);
    add_trial_records(config, "expectation", shell, curve, stamp, tc, out);
    const auto z = normalized_counts(tc, e);
    ExperimentRecord r = base_record(config, "expectation", e, static_cast<std::int64_t>(shell.size()), &curve, stamp);
    r.trials = config.trials;
    const double mean = sample_mean(z);
    const double se = std::sqrt(sample_variance(z) / static_cast<double>(z.size()));
    const double prediction = 2.0 * curve.length() / std::sqrt(3.0);
    r.set("mean", mean);
    r.set("standard_error", se);
    r.set("prediction", prediction);
    r.set("z_score", (mean - prediction) / se);
    r.set("mean_count", mean * sqrt_e(e));
    r.set("expected_count", expected_count(curve, e));
    r.set("suspicious", total(tc.suspicious));
    r.set("resolution", tc.resolution);
    if (config.trials == 1) {
      r.seed = trial_seed(config.master_seed, e, 0);
      r.set("zero_count", static_cast<double>(tc.counts[0]));
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ExperimentRecord> run_variance(const ExperimentConfig& config, const RunContext& ctx) {
  const Stamp stamp(ctx);
  const Curve curve = config.curve.build();
  require_curvature(curve, "variance");
  if (config.trials < 500) throw ConfigError("variance: needs at least 500 trials");
  std::vector<ExperimentRecord> out;
  const auto energies = admissible_energies(config, "variance", &curve, stamp, out);
  if (energies.size() < 2) throw ConfigError("variance: needs at least two admissible energies");
  const auto [lo, hi] = std::minmax_element(energies.begin(), energies.end());
  if (*hi < 10 * *lo) throw ConfigError("variance: admissible energies must span at least one decade");

  std::vector<double> es, vars, proxies;
  for (auto e : energies) {
    const LatticeShell shell = enumerate_shell(e);
    const TrialCounts tc = sample_zero_counts(shell, curve, config.trials, config.master_seed,
                                              config.points_per_wavelength, ctx.threads);
    add_trial_records(config, "variance", shell, curve, stamp, tc, out);
    const auto z = normalized_counts(tc, e);
    const double var = sample_variance(z);
    const ConfidenceInterval ci = bootstrap_variance(z, config.bootstrap_resamples,
                                                     derive_seed(config.master_seed, {static_cast<std::uint64_t>(e), 0xB0075u}));
    const double proxy = variance_upper_proxy(shell, curve, config.grid_per_wavelength, ctx.threads);

    ExperimentRecord r = base_record(config, "variance", e, static_cast<std::int64_t>(shell.size()), &curve, stamp);
    r.trials = config.trials;
    r.set("mean", sample_mean(z));
    r.set("variance", var);
    r.set("variance_ci_lo", ci.lo);
    r.set("variance_ci_hi", ci.hi);
    r.set("r2", proxy);
    r.set("suspicious", total(tc.suspicious));
    out.push_back(std::move(r));
    es.push_back(static_cast<double>(e));
    vars.push_back(var);
    proxies.push_back(proxy);
  }

  ExperimentRecord agg = base_record(config, "variance", 0, 0, &curve, stamp);
  agg.trials = config.trials;
  bool decreasing = true;
  for (std::size_t i = 1; i < vars.size(); ++i) decreasing = decreasing && vars[i] < vars[i - 1];
  agg.set("energies", static_cast<double>(es.size()));
  agg.set("slope_variance", vars.front() > 0.0 ? loglog_slope(es, vars) : std::nan(""));
  agg.set("slope_r2", loglog_slope(es, proxies));
  agg.set("decreasing", decreasing ? 1.0 : 0.0);
  out.push_back(std::move(agg));
  return out;
}

std::vector<ExperimentRecord> run_riesz(const ExperimentConfig& config, const RunContext& ctx) {
  const Stamp stamp(ctx);
  std::vector<ExperimentRecord> out;
  for (auto e : config.energies) {
    const LatticeShell shell = enumerate_shell(e);
    if (shell.size() < 2) {
      out.push_back(rejection(config, "riesz", e, nullptr, stamp, "N_E < 2"));
      continue;
    }
    const double n = static_cast<double>(shell.size());
    for (double s : config.riesz_s) {
      const EnergyReport rep = riesz_energy(shell, s);
      ExperimentRecord r = base_record(config, "riesz", e, static_cast<std::int64_t>(shell.size()), nullptr, stamp);
      r.set("riesz_s", s);
      r.set("value", rep.value);
      r.set("normalized", rep.normalized);
      r.set("dyadic_bound", rep.dyadic_bound);
      r.set("limit_constant", riesz_limit_constant(s));
      r.set("normalized_over_limit", rep.normalized / riesz_limit_constant(s));
      r.set("growth_ratio", rep.value / (n * n * std::pow(static_cast<double>(e), 0.1)));
      r.set("admissible", is_admissible(e) ? 1.0 : 0.0);
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<ExperimentRecord> run_oscillatory(const ExperimentConfig& config, const RunContext& ctx) {
  const Stamp stamp(ctx);
  const Curve curve = config.curve.build();
  const DecayFit fit = decay_fit(curve, config.lambdas, config.xi_samples, config.master_seed, ctx.threads);
  ExperimentRecord r = base_record(config, "oscillatory", 0, 0, &curve, stamp);
  r.set("exponent", fit.exponent);
  r.set("directions", static_cast<double>(fit.directions));
  for (std::size_t i = 0; i < fit.lambdas.size(); ++i) {
    r.set("lambda_" + std::to_string(i), fit.lambdas[i]);
    r.set("max_abs_" + std::to_string(i), fit.max_abs[i]);
  }
  return {std::move(r)};
}

std::vector<ExperimentRecord> run_scaling_suite(const ExperimentConfig& config, const RunContext& ctx) {
  const Stamp stamp(ctx);
  const Curve curve = config.curve.build();
  std::vector<ExperimentRecord> out;
  std::vector<double> es, r2s;
  for (auto e : admissible_energies(config, "r2-scaling", &curve, stamp, out)) {
    const LatticeShell shell = enumerate_shell(e);
    const SecondMoments m = second_moments(shell, curve, config.grid_per_wavelength, ctx.threads);
    ExperimentRecord r = base_record(config, "r2-scaling", e, static_cast<std::int64_t>(shell.size()), &curve, stamp);
    const double floor = curve.length() * curve.length() / static_cast<double>(shell.size());
    r.set("r2", m.total());
    r.set("r_sq", m.r_sq);
    r.set("r1_sq", m.r1_sq);
    r.set("r2_sq", m.r2_sq);
    r.set("r12_sq", m.r12_sq);
    r.set("r_sq_floor", floor);
    r.set("identity_margin", m.r_sq - floor);
    r.set("intervals", static_cast<double>(m.intervals));
    out.push_back(std::move(r));
    es.push_back(static_cast<double>(e));
    r2s.push_back(m.total());
  }
  if (es.size() >= 2) {
    ExperimentRecord agg = base_record(config, "r2-scaling", 0, 0, &curve, stamp);
    agg.trials = static_cast<std::int64_t>(es.size());
    agg.set("slope_r2", loglog_slope(es, r2s));
    out.push_back(std::move(agg));
  }
  ExperimentConfig admissible = config;
  admissible.energies.clear();
  for (auto e : config.energies)
    if (is_admissible(e)) admissible.energies.push_back(e);
  RunContext same{ctx.threads, stamp.timestamp};
  for (auto& r : run_riesz(admissible, same)) out.push_back(std::move(r));
  for (auto& r : run_oscillatory(config, same)) out.push_back(std::move(r));
  return out;
}

std::vector<ExperimentRecord> run_singular(const ExperimentConfig& config, const RunContext& ctx) {
  const Stamp stamp(ctx);
  const Curve curve = config.curve.build();
  std::vector<ExperimentRecord> out;
  for (auto e : config.energies) {
    const LatticeShell shell = enumerate_shell(e);
    if (shell.empty()) {
      out.push_back(rejection(config, "singular", e, &curve, stamp, "N_E = 0"));
      continue;
    }
    const SingularReport rep = singular_cubes(shell, curve, config.c0, config.probe, config.grid_per_wavelength,
                                              ctx.threads);
    std::size_t diagonal = 0;
    for (const auto& [i, j] : rep.singular_pairs) diagonal += i == j;
    ExperimentRecord r = base_record(config, "singular", e, static_cast<std::int64_t>(shell.size()), &curve, stamp);
    r.set("c0", rep.c0);
    r.set("k", rep.k);
    r.set("delta0", rep.delta0);
    r.set("singular_count", static_cast<double>(rep.singular_pairs.size()));
    r.set("diagonal_singular", static_cast<double>(diagonal));
    r.set("r_sq_integral", rep.r_sq_integral);
    r.set("ratio", rep.ratio());
    r.set("constant", config.singular_constant);
    r.set("bound_holds", rep.ratio() <= config.singular_constant ? 1.0 : 0.0);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ExperimentRecord> run_shell_census(const ExperimentConfig& config, const RunContext& ctx) {
  const Stamp stamp(ctx);
  std::vector<ExperimentRecord> out;
  for (auto e : config.energies) {
    const LatticeShell shell = enumerate_shell(e);
    ExperimentRecord r = base_record(config, "shell-census", e, static_cast<std::int64_t>(shell.size()), nullptr, stamp);
    r.set("admissible", is_admissible(e) ? 1.0 : 0.0);
    r.set("sum_of_three_squares", is_sum_of_three_squares(e) ? 1.0 : 0.0);
    out.push_back(std::move(r));
  }
  std::int64_t limit = config.census_limit;
  if (limit == 0 && !config.energies.empty()) limit = *std::max_element(config.energies.begin(), config.energies.end());
  if (limit > 0) {
    const auto n = static_cast<std::size_t>(limit);
    std::vector<std::size_t> sizes(n);
    parallel_for(n, ctx.threads, [&](std::size_t i) { sizes[i] = enumerate_shell(static_cast<std::int64_t>(i + 1)).size(); });
    double admissible = 0, empty_admissible = 0, mismatches = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto e = static_cast<std::int64_t>(i + 1);
      if (is_admissible(e)) {
        ++admissible;
        if (sizes[i] == 0) ++empty_admissible;
      }
      if ((sizes[i] > 0) != is_sum_of_three_squares(e)) ++mismatches;
    }
    ExperimentRecord agg = base_record(config, "shell-census", 0, 0, nullptr, stamp);
    agg.trials = limit;
    agg.set("limit", static_cast<double>(limit));
    agg.set("admissible_checked", admissible);
    agg.set("admissible_empty", empty_admissible);
    agg.set("representability_mismatches", mismatches);
    out.push_back(std::move(agg));
  }
  return out;
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config, const RunContext& ctx) {
  const std::string& x = config.experiment;
  if (x == "expectation") return run_expectation(config, ctx);
  if (x == "variance") return run_variance(config, ctx);
  if (x == "r2-scaling") return run_scaling_suite(config, ctx);
  if (x == "riesz") return run_riesz(config, ctx);
  if (x == "oscillatory") return run_oscillatory(config, ctx);
  if (x == "singular") return run_singular(config, ctx);
  if (x == "shell-census") return run_shell_census(config, ctx);
  throw ConfigError("unknown experiment '" + x + "'");
}

}  // namespace torusfield
