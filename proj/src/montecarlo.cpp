#include "ufs/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "ufs/detection.hpp"
#include "ufs/stats.hpp"

namespace ufs {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Role ids of the per-trial RNG subtree.
enum Role : std::uint64_t {
  kPilot = 0,
  kChannelBob = 1,
  kChannelEve = 2,
  kPlanBob = 3,
  kPlanEve = 4,
  kNoise = 5,
  kSrsSequence = 6,
};

CMatrix flat_received(const TrainingScenario& scn, const CVector& signature_bob,
                      const CVector& pilot, const CVector& h,
                      const std::optional<CVector>& g, RngStream& noise_rng) {
  const int n = scn.pilot_length;
  const int m = scn.antennas;
  CMatrix y = signature_bob * h.transpose();
  if (scn.attack) y += std::sqrt(scn.p_eve) * pilot * g->transpose();
  RngStream noise = noise_rng.substream(0);
  for (int col = 0; col < m; ++col)
    for (int row = 0; row < n; ++row) y(row, col) += noise.cgaussian(scn.noise_var);
  return y;
}

}  // namespace

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::ufs: return "ufs";
    case Scheme::srs: return "srs";
    case Scheme::sync: return "sync";
  }
  return "?";
}

const char* to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::power_ratio_db: return "power_ratio_db";
    case SweepAxis::snr_db: return "snr_db";
    case SweepAxis::phi_max: return "phi_max";
    case SweepAxis::pilot_length: return "pilot_length";
    case SweepAxis::segments: return "segments";
  }
  return "?";
}

long SweepResult::total_failures() const {
  long n = 0;
  for (const auto& p : points) n += p.failures;
  return n;
}

TrainingScenario apply_axis(const TrainingScenario& base, SweepAxis axis, double value) {
  TrainingScenario scn = base;
  switch (axis) {
    case SweepAxis::power_ratio_db:  // P_E / P_B in dB
      scn.p_eve = scn.p_bob * std::pow(10.0, value / 10.0);
      break;
    case SweepAxis::snr_db:  // P_B / sigma_n^2 in dB
      scn.noise_var = scn.p_bob / std::pow(10.0, value / 10.0);
      break;
    case SweepAxis::phi_max:
      scn.phi_max = value;
      break;
    case SweepAxis::pilot_length: {
      double rounded = std::round(value);
      if (rounded != value) throw std::invalid_argument("pilot_length sweep value must be integer");
      scn.pilot_length = static_cast<int>(rounded);
      break;
    }
    case SweepAxis::segments: {
      double rounded = std::round(value);
      if (rounded != value) throw std::invalid_argument("segments sweep value must be integer");
      scn.segments = static_cast<int>(rounded);
      break;
    }
  }
  scn.validate();
  return scn;
}

TrialRecord run_trial(const ExperimentConfig& cfg, const TrainingScenario& scn,
                      long point_index, long trial_index) {
  RngStream trial_rng = RngStream(cfg.master_seed, static_cast<std::uint64_t>(point_index))
                            .substream(static_cast<std::uint64_t>(trial_index));
  TrialRecord rec;
  try {
    RngStream pilot_rng = trial_rng.substream(kPilot);
    RngStream h_rng = trial_rng.substream(kChannelBob);
    RngStream noise_rng = trial_rng.substream(kNoise);

    CVector pilot = gen_qpsk_pilot(scn.pilot_length, pilot_rng);
    CVector h = gen_channel(scn.antennas, h_rng);
    std::optional<CVector> g;
    if (scn.attack) {
      RngStream g_rng = trial_rng.substream(kChannelEve);
      g = gen_channel(scn.antennas, g_rng);
    }

    switch (cfg.scheme) {
      case Scheme::ufs: {
        RngStream plan_b_rng = trial_rng.substream(kPlanBob);
        Eigen::VectorXd plan_b = draw_cfo_plan(scn.segments, scn.phi_max, plan_b_rng);
        std::optional<Eigen::VectorXd> plan_e;
        if (scn.attack) {
          RngStream plan_e_rng = trial_rng.substream(kPlanEve);
          plan_e = draw_cfo_plan(scn.segments, scn.phi_max, plan_e_rng);
        }
        ReceivedTraining rx =
            synthesize_received(scn, pilot, plan_b, plan_e, h, g, noise_rng);
        rec.attack_detected = detect_attack(rx).attack_detected;
        if (!scn.attack) {
          CfoEstimate cfo = estimate_cfo(rx, cfg.grid);
          ChannelEstimate ch = estimate_channel(rx, cfo);
          rec.channel_se = mse(ch.coefficients, h);
          double acc = 0.0;
          for (int k = 0; k < scn.segments; ++k) {
            double err = wrap_cfo(cfo.per_segment(k) - plan_b(k));
            acc += err * err;
          }
          rec.cfo_se = acc / scn.segments;
        }
        break;
      }
      case Scheme::srs: {
        RngStream seq_rng = trial_rng.substream(kSrsSequence);
        CVector x = srs_transmit(pilot, cfg.srs, scn.p_bob, seq_rng);
        CMatrix y = flat_received(scn, x, pilot, h, g, noise_rng);
        rec.attack_detected = srs_detect(y).attack_detected;
        if (!scn.attack) {
          ChannelEstimate ch = srs_estimate_channel(y, pilot, cfg.srs, scn.p_bob);
          rec.channel_se = mse(ch.coefficients, h);
        }
        break;
      }
      case Scheme::sync: {
        CVector x = std::sqrt(scn.p_bob) * pilot;
        CMatrix y = flat_received(scn, x, pilot, h, g, noise_rng);
        rec.attack_detected = false;  // no detector in the benchmark
        if (!scn.attack) {
          Eigen::RowVectorXcd h_row =
              (pilot.adjoint() * y) / (scn.pilot_length * std::sqrt(scn.p_bob));
          rec.channel_se = mse(h_row.transpose(), h);
        }
        break;
      }
    }
  } catch (const std::runtime_error&) {
    rec.failed = true;
  }
  return rec;
}

SweepResult run_sweep(const ExperimentConfig& cfg, int workers) {
  if (cfg.trials < 1) throw std::invalid_argument("run_sweep: trials must be >= 1");
  if (cfg.sweep_values.empty()) throw std::invalid_argument("run_sweep: sweep_values empty");
  if (workers < 1) workers = 1;

  // Reject every illegal point before running anything.
  std::vector<TrainingScenario> scenarios;
  scenarios.reserve(cfg.sweep_values.size());
  for (double v : cfg.sweep_values) {
    TrainingScenario scn = apply_axis(cfg.scenario, cfg.axis, v);
    if (cfg.scheme == Scheme::ufs) {
      if (scn.antennas < 3) throw std::invalid_argument("run_sweep: UFS-MDL requires M >= 3");
      if (scn.segment_length() < scn.antennas)
        throw std::invalid_argument("run_sweep: UFS-MDL requires Q >= M");
    } else if (cfg.scheme == Scheme::srs) {
      if (scn.antennas < 3) throw std::invalid_argument("run_sweep: SRS-MDL requires M >= 3");
      if (scn.pilot_length < scn.antennas)
        throw std::invalid_argument("run_sweep: SRS-MDL requires N >= M");
    }
    scenarios.push_back(scn);
  }

  SweepResult result;
  result.points.reserve(scenarios.size());
  for (std::size_t p = 0; p < scenarios.size(); ++p) {
    const TrainingScenario& scn = scenarios[p];
    std::vector<TrialRecord> records(cfg.trials);
    std::atomic<long> next{0};
    auto worker = [&]() {
      for (;;) {
        long t = next.fetch_add(1);
        if (t >= cfg.trials) return;
        records[t] = run_trial(cfg, scn, static_cast<long>(p), t);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    // Deterministic reduce in trial order.
    long used = 0, failures = 0, detected = 0;
    double ch_sum = 0.0, cfo_sum = 0.0;
    long ch_count = 0, cfo_count = 0;
    for (const TrialRecord& r : records) {
      if (r.failed) {
        ++failures;
        continue;
      }
      ++used;
      if (r.attack_detected) ++detected;
      if (!std::isnan(r.channel_se)) {
        ch_sum += r.channel_se;
        ++ch_count;
      }
      if (!std::isnan(r.cfo_se)) {
        cfo_sum += r.cfo_se;
        ++cfo_count;
      }
    }

    PointResult pr;
    pr.sweep_value = cfg.sweep_values[p];
    pr.trials_used = used;
    pr.failures = failures;
    pr.miss_rate = pr.miss_ci_lo = pr.miss_ci_hi = kNaN;
    pr.fa_rate = pr.fa_ci_lo = pr.fa_ci_hi = kNaN;
    if (used > 0) {
      if (scn.attack) {
        long misses = used - detected;
        auto [lo, hi] = wilson_interval(misses, used, 0.95);
        pr.miss_rate = static_cast<double>(misses) / used;
        pr.miss_ci_lo = lo;
        pr.miss_ci_hi = hi;
      } else {
        auto [lo, hi] = wilson_interval(detected, used, 0.95);
        pr.fa_rate = static_cast<double>(detected) / used;
        pr.fa_ci_lo = lo;
        pr.fa_ci_hi = hi;
      }
    }
    pr.channel_mse = ch_count > 0 ? ch_sum / ch_count : kNaN;
    pr.cfo_mse = cfo_count > 0 ? cfo_sum / cfo_count : kNaN;
    result.points.push_back(pr);
  }
  return result;
}

}  // namespace ufs
