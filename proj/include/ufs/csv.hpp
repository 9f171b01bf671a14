#pragma once

#include <string>
#include <vector>

#include "ufs/montecarlo.hpp"

namespace ufs {

// Serializes a sweep result, preceded by '#' comment lines carrying the
// master seed and the fully resolved config, so any CSV is reproducible from
// the file alone. Locale-independent, newline-terminated, UTF-8.
std::string sweep_to_csv(const SweepResult& result, const std::string& resolved_config);

struct CsvData {
  std::string config_json;  // from the '# config:' comment, may be empty
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column_index(const std::string& name) const;  // -1 when absent
};

// Parses a CSV produced by sweep_to_csv; throws std::invalid_argument on a
// schema mismatch or an empty body.
CsvData parse_sweep_csv(const std::string& text);

}  // namespace ufs
