#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace torusfield {

/// One persisted row of an experiment.
struct ExperimentRecord {
  std::string experiment;
  std::int64_t energy = 0;
  std::int64_t shell_size = 0;
  std::string curve_kind;
  std::vector<double> curve_params;
  double length = 0.0;
  std::int64_t trial = -1;   // -1 for an aggregate
  std::int64_t trials = 0;   // trial count behind an aggregate
  std::string status = "ok";
  std::string reason;
  std::vector<std::pair<std::string, double>> payload;
  std::vector<std::pair<std::string, std::string>> settings;  // config entries that reproduce the row
  std::uint64_t seed = 0;
  std::string timestamp;
  std::string code_version;

  bool aggregate() const { return trial < 0; }
  void set(std::string name, double value);
  std::optional<double> find(std::string_view name) const;
  double get(std::string_view name) const;  // throws std::out_of_range when absent
};

/// %.17g; non-finite values have no JSON spelling and are written as null.
std::string format_real(double v);

std::string to_json(const ExperimentRecord& record);

/// Header row plus one line per record. Payload columns are the union of
/// payload names in first-seen order; missing cells are empty.
std::string to_csv(std::span<const ExperimentRecord> records);

void write_json_lines(std::ostream& out, std::span<const ExperimentRecord> records);
void write_json_lines(const std::filesystem::path& path, std::span<const ExperimentRecord> records);
void write_csv(const std::filesystem::path& path, std::span<const ExperimentRecord> records);

}  // namespace torusfield
