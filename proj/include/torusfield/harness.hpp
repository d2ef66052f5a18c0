#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "torusfield/config.hpp"
#include "torusfield/lattice.hpp"
#include "torusfield/record.hpp"
#include "torusfield/zeros.hpp"

namespace torusfield {

struct RunContext {
  unsigned threads = 1;
  std::string timestamp;  // empty: stamp records with the current UTC time
};

std::string utc_timestamp();

/// Seed of trial `trial` at energy E, independent of scheduling.
std::uint64_t trial_seed(std::uint64_t master_seed, std::int64_t energy, std::int64_t trial);

struct TrialCounts {
  std::vector<std::int64_t> counts;
  std::vector<std::int64_t> suspicious;
  double resolution = 0.0;
};

/// Zero counts of `trials` independent waves restricted to `curve`, trial i
/// drawn from trial_seed(master_seed, E, i).
TrialCounts sample_zero_counts(const LatticeShell& shell, const Curve& curve, int trials, std::uint64_t master_seed,
                               int points_per_wavelength, unsigned threads = 1);

double sample_mean(std::span<const double> x);
double sample_variance(std::span<const double> x);  // n - 1 denominator

struct ConfidenceInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Percentile bootstrap interval for the sample variance.
ConfidenceInterval bootstrap_variance(std::span<const double> x, int resamples, std::uint64_t seed,
                                      double level = 0.95);

inline constexpr const char* kInadmissibleReason = "E ≡ 0,4,7 mod 8";

std::vector<ExperimentRecord> run_expectation(const ExperimentConfig& config, const RunContext& ctx = {});
std::vector<ExperimentRecord> run_variance(const ExperimentConfig& config, const RunContext& ctx = {});
/// R2 ladder with its slope, then the riesz and oscillatory records.
std::vector<ExperimentRecord> run_scaling_suite(const ExperimentConfig& config, const RunContext& ctx = {});
std::vector<ExperimentRecord> run_riesz(const ExperimentConfig& config, const RunContext& ctx = {});
std::vector<ExperimentRecord> run_oscillatory(const ExperimentConfig& config, const RunContext& ctx = {});
std::vector<ExperimentRecord> run_singular(const ExperimentConfig& config, const RunContext& ctx = {});
std::vector<ExperimentRecord> run_shell_census(const ExperimentConfig& config, const RunContext& ctx = {});

/// Dispatch on config.experiment.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config, const RunContext& ctx = {});

}  // namespace torusfield
