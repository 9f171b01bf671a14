#include "doctest.h"

#include <cmath>

#include "ufs/montecarlo.hpp"
#include "ufs/stats.hpp"

using namespace ufs;

namespace {

ExperimentConfig small_config(bool attack) {
  ExperimentConfig cfg;
  cfg.scenario.antennas = 4;
  cfg.scenario.pilot_length = 32;
  cfg.scenario.segments = 2;
  cfg.scenario.p_bob = 1.0;
  cfg.scenario.p_eve = 1.0;
  cfg.scenario.noise_var = 0.01;
  cfg.scenario.phi_max = 0.2;
  cfg.scenario.attack = attack;
  cfg.scheme = Scheme::ufs;
  cfg.axis = SweepAxis::power_ratio_db;
  cfg.sweep_values = {0.0, 10.0};
  cfg.trials = 50;
  cfg.master_seed = 99;
  return cfg;
}

bool same_point(const PointResult& a, const PointResult& b) {
  auto eq = [](double x, double y) {
    return (std::isnan(x) && std::isnan(y)) || x == y;
  };
  return eq(a.miss_rate, b.miss_rate) && eq(a.fa_rate, b.fa_rate) &&
         eq(a.channel_mse, b.channel_mse) && eq(a.cfo_mse, b.cfo_mse) &&
         a.trials_used == b.trials_used && a.failures == b.failures;
}

}  // namespace

TEST_CASE("wilson_interval") {
  SUBCASE("zero successes anchor low at 0, full successes anchor high at 1") {
    auto [lo0, hi0] = wilson_interval(0, 25, 0.95);
    CHECK(lo0 == 0.0);
    CHECK(hi0 > 0.0);
    auto [lo1, hi1] = wilson_interval(25, 25, 0.95);
    CHECK(hi1 == 1.0);
    CHECK(lo1 < 1.0);
  }
  SUBCASE("matches the textbook formula at (50, 100, 0.95)") {
    const double z = 1.9599639845400545;  // frozen 97.5% normal quantile
    const double n = 100.0, p = 0.5;
    double denom = 1.0 + z * z / n;
    double center = (p + z * z / (2 * n)) / denom;
    double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
    auto [lo, hi] = wilson_interval(50, 100, 0.95);
    CHECK(lo == doctest::Approx(center - half).epsilon(1e-9));
    CHECK(hi == doctest::Approx(center + half).epsilon(1e-9));
  }
  SUBCASE("invalid counts rejected") {
    CHECK_THROWS_AS(wilson_interval(5, 4, 0.95), std::invalid_argument);
    CHECK_THROWS_AS(wilson_interval(-1, 4, 0.95), std::invalid_argument);
    CHECK_THROWS_AS(wilson_interval(0, 0, 0.95), std::invalid_argument);
  }
  SUBCASE("CI half-width near rate 0.5 at 1e4 trials is below 0.01") {
    auto [lo, hi] = wilson_interval(5000, 10000, 0.95);
    CHECK((hi - lo) / 2.0 <= 0.01);
  }
}

TEST_CASE("apply_axis") {
  TrainingScenario base;
  base.antennas = 4;
  base.pilot_length = 32;
  base.segments = 2;
  base.noise_var = 0.01;
  base.phi_max = 0.2;
  CHECK(apply_axis(base, SweepAxis::power_ratio_db, 10.0).p_eve == doctest::Approx(10.0));
  CHECK(apply_axis(base, SweepAxis::snr_db, 20.0).noise_var == doctest::Approx(0.01));
  CHECK(apply_axis(base, SweepAxis::phi_max, 0.3).phi_max == 0.3);
  CHECK(apply_axis(base, SweepAxis::pilot_length, 64.0).pilot_length == 64);
  CHECK(apply_axis(base, SweepAxis::segments, 4.0).segments == 4);
  SUBCASE("illegal values rejected") {
    CHECK_THROWS_AS(apply_axis(base, SweepAxis::segments, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(apply_axis(base, SweepAxis::phi_max, 0.6), std::invalid_argument);
    CHECK_THROWS_AS(apply_axis(base, SweepAxis::pilot_length, 33.5), std::invalid_argument);
  }
}

TEST_CASE("run_trial") {
  SUBCASE("deterministic across repeated invocations") {
    ExperimentConfig cfg = small_config(true);
    TrainingScenario scn = apply_axis(cfg.scenario, cfg.axis, 0.0);
    TrialRecord a = run_trial(cfg, scn, 0, 7);
    TrialRecord b = run_trial(cfg, scn, 0, 7);
    CHECK(a.attack_detected == b.attack_detected);
    CHECK(a.failed == b.failed);
  }
  SUBCASE("H0 at high SNR: no false alarm on a spot trial") {
    ExperimentConfig cfg = small_config(false);
    cfg.scenario.antennas = 16;
    cfg.scenario.pilot_length = 64;
    cfg.scenario.segments = 4;
    cfg.scenario.noise_var = 1e-4;  // SNR 40 dB
    TrainingScenario scn = apply_axis(cfg.scenario, cfg.axis, 0.0);
    TrialRecord r = run_trial(cfg, scn, 0, 0);
    CHECK_FALSE(r.attack_detected);
    CHECK_FALSE(r.failed);
    CHECK(std::isfinite(r.channel_se));
    CHECK(std::isfinite(r.cfo_se));
  }
  SUBCASE("phi_max = 0 makes the attack invisible on every trial") {
    ExperimentConfig cfg = small_config(true);
    cfg.scenario.phi_max = 0.0;
    TrainingScenario scn = apply_axis(cfg.scenario, cfg.axis, 0.0);
    for (long t = 0; t < 20; ++t) {
      TrialRecord r = run_trial(cfg, scn, 0, t);
      CHECK_FALSE(r.attack_detected);  // miss
    }
  }
}

TEST_CASE("run_sweep") {
  SUBCASE("identical results for 1, 4 and 16 workers") {
    ExperimentConfig cfg = small_config(true);
    SweepResult r1 = run_sweep(cfg, 1);
    SweepResult r4 = run_sweep(cfg, 4);
    SweepResult r16 = run_sweep(cfg, 16);
    REQUIRE(r1.points.size() == 2);
    for (size_t i = 0; i < r1.points.size(); ++i) {
      CHECK(same_point(r1.points[i], r4.points[i]));
      CHECK(same_point(r1.points[i], r16.points[i]));
    }
  }
  SUBCASE("H0 sweep fills false-alarm and MSE columns, H1 fills miss") {
    SweepResult h0 = run_sweep(small_config(false), 4);
    CHECK(std::isnan(h0.points[0].miss_rate));
    CHECK(std::isfinite(h0.points[0].fa_rate));
    CHECK(std::isfinite(h0.points[0].channel_mse));
    CHECK(std::isfinite(h0.points[0].cfo_mse));
    SweepResult h1 = run_sweep(small_config(true), 4);
    CHECK(std::isfinite(h1.points[0].miss_rate));
    CHECK(std::isnan(h1.points[0].fa_rate));
  }
  SUBCASE("trials = 1 yields degenerate rates with a valid CI") {
    ExperimentConfig cfg = small_config(true);
    cfg.trials = 1;
    SweepResult r = run_sweep(cfg, 1);
    CHECK((r.points[0].miss_rate == 0.0 || r.points[0].miss_rate == 1.0));
    CHECK(r.points[0].miss_ci_lo >= 0.0);
    CHECK(r.points[0].miss_ci_hi <= 1.0);
  }
  SUBCASE("no silent trial loss") {
    ExperimentConfig cfg = small_config(true);
    SweepResult r = run_sweep(cfg, 4);
    for (const auto& p : r.points) CHECK(p.trials_used + p.failures == cfg.trials);
  }
  SUBCASE("illegal sweep value rejected before any trial") {
    ExperimentConfig cfg = small_config(true);
    cfg.axis = SweepAxis::segments;
    cfg.sweep_values = {2.0, 5.0};
    CHECK_THROWS_AS(run_sweep(cfg, 2), std::invalid_argument);
    cfg.sweep_values = {2.0, 16.0};  // Q = 2 < M = 4
    CHECK_THROWS_AS(run_sweep(cfg, 2), std::invalid_argument);
  }
}
