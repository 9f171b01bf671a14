#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ufs/estimation.hpp"
#include "ufs/signal_model.hpp"
#include "ufs/srs_baseline.hpp"

namespace ufs {

enum class Scheme { ufs, srs, sync };
enum class SweepAxis { power_ratio_db, snr_db, phi_max, pilot_length, segments };

const char* to_string(Scheme s);
const char* to_string(SweepAxis a);

struct ExperimentConfig {
  TrainingScenario scenario;  // template; one field is overridden per point
  Scheme scheme = Scheme::ufs;
  SweepAxis axis = SweepAxis::power_ratio_db;
  std::vector<double> sweep_values;
  long trials = 10000;
  std::uint64_t master_seed = 1;
  SrsConfig srs;
  GridSearchConfig grid;
};

struct TrialRecord {
  bool attack_detected = false;
  bool failed = false;
  double channel_se = std::numeric_limits<double>::quiet_NaN();
  double cfo_se = std::numeric_limits<double>::quiet_NaN();
};

struct PointResult {
  double sweep_value = 0.0;
  double miss_rate, miss_ci_lo, miss_ci_hi;       // NaN under H0
  double fa_rate, fa_ci_lo, fa_ci_hi;             // NaN under H1
  double channel_mse, cfo_mse;                    // NaN when not estimated
  long trials_used = 0;
  long failures = 0;
};

struct SweepResult {
  std::vector<PointResult> points;
  long total_failures() const;
};

// Returns the scenario template with the swept parameter set to `value`;
// throws std::invalid_argument if the resulting scenario is illegal.
TrainingScenario apply_axis(const TrainingScenario& base, SweepAxis axis, double value);

// One fully deterministic trial: the RNG tree is derived from
// (master_seed, point_index, trial_index) alone. Channel/CFO estimation (and
// its squared errors) runs only under H0; under attack the channel estimate
// targets a contaminated composite channel and its MSE is not meaningful.
TrialRecord run_trial(const ExperimentConfig& cfg, const TrainingScenario& point_scenario,
                      long point_index, long trial_index);

// Runs all points of the sweep on `workers` threads. The result is
// bit-identical for any worker count at a fixed master_seed.
SweepResult run_sweep(const ExperimentConfig& cfg, int workers);

}  // namespace ufs
