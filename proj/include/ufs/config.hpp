#pragma once

#include <string>

#include "ufs/montecarlo.hpp"

namespace ufs {

// Thrown on any config-file validation problem; the message names the
// offending key and value.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Parses a JSON experiment config (see configs/*.json). Unknown keys are
// rejected; dB-valued fields (snr_db, power_ratio_db) are converted to the
// linear scenario fields internally; P_B is fixed at 1 (linear).
ExperimentConfig parse_experiment_config(const std::string& json_text);

ExperimentConfig load_experiment_config(const std::string& path);

// Canonical JSON of the fully resolved config (used for the CSV header
// comment and by the plotter's analytic overlay).
std::string resolved_config_json(const ExperimentConfig& cfg);

Scheme parse_scheme(const std::string& name);
SweepAxis parse_sweep_axis(const std::string& name);

}  // namespace ufs
