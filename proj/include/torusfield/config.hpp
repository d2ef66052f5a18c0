#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "torusfield/curve.hpp"

namespace torusfield {

struct CurveSpec {
  CurveKind kind = CurveKind::TorusHelix;
  std::vector<double> params{0.25};

  Curve build() const;
};

/// Experiment settings read from `key = value` lines. Lists are comma
/// separated; reals also accept a p/q fraction. Unknown or repeated keys are
/// errors.
struct ExperimentConfig {
  std::string experiment;
  std::vector<std::int64_t> energies{11, 101, 1009};
  CurveSpec curve;
  int trials = 1000;
  std::uint64_t master_seed = 1;
  int points_per_wavelength = 32;
  int grid_per_wavelength = 8;
  double c0 = 0.1;
  std::string output;

  std::vector<double> riesz_s{0.5, 2.0 / 3.0, 1.0};
  std::vector<double> lambdas{1e2, 1e3, 1e4, 1e5};
  int xi_samples = 64;
  int bootstrap_resamples = 1000;
  double singular_constant = 10.0;
  int probe = 5;
  std::int64_t census_limit = 0;  // 0 means max(energies)
  bool record_trials = false;
  std::string table;
};

const std::vector<std::string>& experiment_names();

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical `key = value` text; parse_config(config_text(c)) reproduces c.
std::string config_text(const ExperimentConfig& config);

/// Key/value pairs of config_text, in file order.
std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& config);

/// Throws ConfigError when a field is out of range.
void validate(const ExperimentConfig& config);

}  // namespace torusfield
