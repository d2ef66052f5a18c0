#include "torusfield/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace torusfield {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view value) {
  std::vector<std::string_view> out;
  if (trim(value).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = value.find(',', start);
    out.push_back(trim(value.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void fail(std::string_view key, std::string_view value, std::string_view what) {
  throw ConfigError("config: " + std::string(key) + " = '" + std::string(value) + "': " + std::string(what));
}

std::int64_t parse_int(std::string_view key, std::string_view s) {
  std::int64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) fail(key, s, "expected an integer");
  return v;
}

std::uint64_t parse_uint(std::string_view key, std::string_view s) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) fail(key, s, "expected a non-negative integer");
  return v;
}

double parse_real(std::string_view key, std::string_view s) {
  auto one = [&](std::string_view t) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size() || t.empty()) fail(key, s, "expected a real number");
    return v;
  };
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return one(s);
  const double den = one(trim(s.substr(slash + 1)));
  if (den == 0.0) fail(key, s, "zero denominator");
  return one(trim(s.substr(0, slash))) / den;
}

bool parse_bool(std::string_view key, std::string_view s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  fail(key, s, "expected true or false");
}

int parse_small(std::string_view key, std::string_view s) {
  const auto v = parse_int(key, s);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) fail(key, s, "out of range");
  return static_cast<int>(v);
}

std::string real_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T, class F>
std::string join(const std::vector<T>& xs, F f) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += f(xs[i]);
  }
  return out;
}

}  // namespace

Curve CurveSpec::build() const { return make_curve(kind, params); }

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"expectation", "variance", "r2-scaling", "riesz",
                                              "oscillatory", "singular", "shell-census"};
  return names;
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config: line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw ConfigError("config: line " + std::to_string(line_no) + ": repeated key '" + key + "'");

    if (key == "experiment") {
      c.experiment = std::string(value);
    } else if (key == "energies") {
      c.energies.clear();
      for (auto item : split_list(value)) c.energies.push_back(parse_int(key, item));
    } else if (key == "curve_kind") {
      try {
        c.curve.kind = parse_curve_kind(value);
      } catch (const DomainError& e) {
        fail(key, value, e.what());
      }
    } else if (key == "curve_params") {
      c.curve.params.clear();
      for (auto item : split_list(value)) c.curve.params.push_back(parse_real(key, item));
    } else if (key == "trials") {
      c.trials = parse_small(key, value);
    } else if (key == "master_seed") {
      c.master_seed = parse_uint(key, value);
    } else if (key == "points_per_wavelength") {
      c.points_per_wavelength = parse_small(key, value);
    } else if (key == "grid_per_wavelength") {
      c.grid_per_wavelength = parse_small(key, value);
    } else if (key == "c0") {
      c.c0 = parse_real(key, value);
    } else if (key == "output") {
      c.output = std::string(value);
    } else if (key == "riesz_s") {
      c.riesz_s.clear();
      for (auto item : split_list(value)) c.riesz_s.push_back(parse_real(key, item));
    } else if (key == "lambdas") {
      c.lambdas.clear();
      for (auto item : split_list(value)) c.lambdas.push_back(parse_real(key, item));
    } else if (key == "xi_samples") {
      c.xi_samples = parse_small(key, value);
    } else if (key == "bootstrap_resamples") {
      c.bootstrap_resamples = parse_small(key, value);
    } else if (key == "singular_constant") {
      c.singular_constant = parse_real(key, value);
    } else if (key == "probe") {
      c.probe = parse_small(key, value);
    } else if (key == "census_limit") {
      c.census_limit = parse_int(key, value);
    } else if (key == "record_trials") {
      c.record_trials = parse_bool(key, value);
    } else if (key == "table") {
      c.table = std::string(value);
    } else {
      throw ConfigError("config: line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate(const ExperimentConfig& c) {
  const auto& names = experiment_names();
  if (!c.experiment.empty() && std::find(names.begin(), names.end(), c.experiment) == names.end())
    throw ConfigError("config: unknown experiment '" + c.experiment + "'");
  for (auto e : c.energies)
    if (e < 1) throw ConfigError("config: energies must be positive integers");
  if (c.trials < 1) throw ConfigError("config: trials must be at least 1");
  if (c.points_per_wavelength < 16) throw ConfigError("config: points_per_wavelength must be at least 16");
  if (c.grid_per_wavelength < 4) throw ConfigError("config: grid_per_wavelength must be at least 4");
  if (!(c.c0 > 0.0 && c.c0 <= 1.0)) throw ConfigError("config: c0 must lie in (0, 1]");
  if (c.xi_samples < 1) throw ConfigError("config: xi_samples must be positive");
  if (c.bootstrap_resamples < 1) throw ConfigError("config: bootstrap_resamples must be positive");
  if (c.probe < 2) throw ConfigError("config: probe must be at least 2");
  if (c.census_limit < 0) throw ConfigError("config: census_limit must be non-negative");
  for (double s : c.riesz_s)
    if (!(s > 0.0 && s < 2.0)) throw ConfigError("config: riesz_s entries must lie in (0, 2)");
  if (c.curve.kind == CurveKind::Custom)
    throw ConfigError("config: custom curves carry code-defined jets and cannot be read from a config file");
  try {
    (void)c.curve.build();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: invalid curve: ") + e.what());
  }
}

std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& c) {
  auto ints = [](const auto& xs) { return join(xs, [](auto v) { return std::to_string(v); }); };
  auto reals = [](const std::vector<double>& xs) { return join(xs, real_text); };
  std::vector<std::pair<std::string, std::string>> out{
      {"experiment", c.experiment},
      {"energies", ints(c.energies)},
      {"curve_kind", std::string(to_string(c.curve.kind))},
      {"curve_params", reals(c.curve.params)},
      {"trials", std::to_string(c.trials)},
      {"master_seed", std::to_string(c.master_seed)},
      {"points_per_wavelength", std::to_string(c.points_per_wavelength)},
      {"grid_per_wavelength", std::to_string(c.grid_per_wavelength)},
      {"c0", real_text(c.c0)},
      {"riesz_s", reals(c.riesz_s)},
      {"lambdas", reals(c.lambdas)},
      {"xi_samples", std::to_string(c.xi_samples)},
      {"bootstrap_resamples", std::to_string(c.bootstrap_resamples)},
      {"singular_constant", real_text(c.singular_constant)},
      {"probe", std::to_string(c.probe)},
      {"census_limit", std::to_string(c.census_limit)},
      {"record_trials", c.record_trials ? "true" : "false"},
  };
  if (!c.output.empty()) out.emplace_back("output", c.output);
  if (!c.table.empty()) out.emplace_back("table", c.table);
  return out;
}

std::string config_text(const ExperimentConfig& c) {
  std::string out;
  for (const auto& [k, v] : config_entries(c)) {
    if (v.empty() && k == "experiment") continue;
    out += k + " = " + v + "\n";
  }
  return out;
}

}  // namespace torusfield
