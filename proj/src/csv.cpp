#include "ufs/csv.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ufs {

namespace {

const char* kHeader =
    "sweep_value,miss_rate,miss_ci_lo,miss_ci_hi,false_alarm_rate,fa_ci_lo,fa_ci_hi,"
    "channel_mse,cfo_mse,trials,failures";

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string sweep_to_csv(const SweepResult& result, const std::string& resolved_config) {
  std::string out;
  out += "# config: " + resolved_config + "\n";
  out += kHeader;
  out += "\n";
  for (const PointResult& p : result.points) {
    out += format_number(p.sweep_value);
    out += "," + format_number(p.miss_rate);
    out += "," + format_number(p.miss_ci_lo);
    out += "," + format_number(p.miss_ci_hi);
    out += "," + format_number(p.fa_rate);
    out += "," + format_number(p.fa_ci_lo);
    out += "," + format_number(p.fa_ci_hi);
    out += "," + format_number(p.channel_mse);
    out += "," + format_number(p.cfo_mse);
    out += "," + std::to_string(p.trials_used);
    out += "," + std::to_string(p.failures);
    out += "\n";
  }
  return out;
}

int CsvData::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

CsvData parse_sweep_csv(const std::string& text) {
  CsvData data;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string tag = "# config: ";
      if (line.rfind(tag, 0) == 0) data.config_json = line.substr(tag.size());
      continue;
    }
    std::istringstream fields(line);
    std::string field;
    if (!header_seen) {
      while (std::getline(fields, field, ',')) data.columns.push_back(field);
      if (data.columns.empty() || data.columns[0] != "sweep_value")
        throw std::invalid_argument("CSV schema mismatch: first column must be sweep_value");
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    while (std::getline(fields, field, ',')) {
      try {
        row.push_back(field == "nan" ? std::nan("") : std::stod(field));
      } catch (const std::exception&) {
        throw std::invalid_argument("CSV schema mismatch: non-numeric field '" + field + "'");
      }
    }
    if (row.size() != data.columns.size())
      throw std::invalid_argument("CSV schema mismatch: row width differs from header");
    data.rows.push_back(std::move(row));
  }
  if (!header_seen) throw std::invalid_argument("CSV schema mismatch: no header row");
  if (data.rows.empty()) throw std::invalid_argument("CSV has an empty body");
  return data;
}

}  // namespace ufs
