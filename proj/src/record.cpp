#include "torusfield/record.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace torusfield {

void ExperimentRecord::set(std::string name, double value) {
  for (auto& [k, v] : payload)
    if (k == name) {
      v = value;
      return;
    }
  payload.emplace_back(std::move(name), value);
}

std::optional<double> ExperimentRecord::find(std::string_view name) const {
  for (const auto& [k, v] : payload)
    if (k == name) return v;
  return std::nullopt;
}

double ExperimentRecord::get(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw std::out_of_range("record has no payload entry '" + std::string(name) + "'");
}

std::string format_real(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out + "\"";
}

std::string csv_cell(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string params_text(const std::vector<double>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += format_real(xs[i]);
  }
  return out;
}

}  // namespace

std::string to_json(const ExperimentRecord& r) {
  std::string out = "{";
  out += "\"experiment\":" + quote(r.experiment);
  out += ",\"E\":" + std::to_string(r.energy);
  out += ",\"N_E\":" + std::to_string(r.shell_size);
  out += ",\"curve_kind\":" + quote(r.curve_kind);
  out += ",\"curve_params\":[" + params_text(r.curve_params, ",") + "]";
  out += ",\"L\":" + format_real(r.length);
  out += ",\"aggregate\":" + std::string(r.aggregate() ? "true" : "false");
  out += ",\"trial\":" + (r.aggregate() ? std::string("null") : std::to_string(r.trial));
  out += ",\"trials\":" + std::to_string(r.trials);
  out += ",\"status\":" + quote(r.status);
  if (!r.reason.empty()) out += ",\"reason\":" + quote(r.reason);
  out += ",\"payload\":{";
  for (std::size_t i = 0; i < r.payload.size(); ++i) {
    if (i) out += ",";
    out += quote(r.payload[i].first) + ":" + format_real(r.payload[i].second);
  }
  out += "},\"settings\":{";
  for (std::size_t i = 0; i < r.settings.size(); ++i) {
    if (i) out += ",";
    out += quote(r.settings[i].first) + ":" + quote(r.settings[i].second);
  }
  out += "},\"seed\":" + std::to_string(r.seed);
  out += ",\"timestamp\":" + quote(r.timestamp);
  out += ",\"code_version\":" + quote(r.code_version);
  return out + "}";
}

std::string to_csv(std::span<const ExperimentRecord> records) {
  std::vector<std::string> columns;
  for (const auto& r : records)
    for (const auto& [k, v] : r.payload)
      if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);

  std::string out = "experiment,E,N_E,curve_kind,curve_params,L,aggregate,trial,trials,status,reason,seed,timestamp,code_version";
  for (const auto& c : columns) out += "," + csv_cell(c);
  out += "\n";
  for (const auto& r : records) {
    out += csv_cell(r.experiment) + "," + std::to_string(r.energy) + "," + std::to_string(r.shell_size) + "," +
           csv_cell(r.curve_kind) + "," + csv_cell(params_text(r.curve_params, " ")) + "," + format_real(r.length) +
           "," + (r.aggregate() ? "1" : "0") + "," + (r.aggregate() ? "" : std::to_string(r.trial)) + "," +
           std::to_string(r.trials) + "," + csv_cell(r.status) + "," + csv_cell(r.reason) + "," +
           std::to_string(r.seed) + "," + csv_cell(r.timestamp) + "," + csv_cell(r.code_version);
    for (const auto& c : columns) {
      out += ",";
      if (auto v = r.find(c); v && std::isfinite(*v)) out += format_real(*v);
    }
    out += "\n";
  }
  return out;
}

void write_json_lines(std::ostream& out, std::span<const ExperimentRecord> records) {
  for (const auto& r : records) out << to_json(r) << '\n';
}

void write_json_lines(const std::filesystem::path& path, std::span<const ExperimentRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_json_lines(out, records);
}

void write_csv(const std::filesystem::path& path, std::span<const ExperimentRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << to_csv(records);
}

}  // namespace torusfield
