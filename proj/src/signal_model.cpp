#include "ufs/signal_model.hpp"

#include <cmath>
#include <stdexcept>

namespace ufs {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;
}

void TrainingScenario::validate() const {
  if (antennas < 1) throw std::invalid_argument("antennas must be >= 1");
  if (pilot_length < 1) throw std::invalid_argument("pilot_length must be >= 1");
  if (segments < 1) throw std::invalid_argument("segments must be >= 1");
  if (pilot_length % segments != 0)
    throw std::invalid_argument("pilot_length must be an exact multiple of segments");
  if (!(p_bob > 0.0)) throw std::invalid_argument("p_bob must be > 0");
  if (attack && !(p_eve >= 0.0)) throw std::invalid_argument("p_eve must be >= 0");
  if (!(noise_var > 0.0)) throw std::invalid_argument("noise_var must be > 0");
  if (!(phi_max >= 0.0) || phi_max >= 0.5)
    throw std::invalid_argument("phi_max must lie in [0, 0.5)");
}

CVector gen_channel(int antennas, RngStream& rng) {
  if (antennas < 1) throw std::invalid_argument("gen_channel: antennas must be >= 1");
  CVector h(antennas);
  const double var = 1.0 / antennas;
  for (int m = 0; m < antennas; ++m) h(m) = rng.cgaussian(var);
  return h;
}

CVector gen_qpsk_pilot(int length, RngStream& rng) {
  if (length < 1) throw std::invalid_argument("gen_qpsk_pilot: length must be >= 1");
  static const double a = 1.0 / std::sqrt(2.0);
  CVector s(length);
  for (int n = 0; n < length; ++n) {
    std::uint64_t bits = rng.next_u64();
    double re = (bits & 1) ? a : -a;
    double im = (bits & 2) ? a : -a;
    s(n) = {re, im};
  }
  return s;
}

CVector phase_ramp(double phi, int length) {
  if (length < 1) throw std::invalid_argument("phase_ramp: length must be >= 1");
  CVector e(length);
  for (int n = 0; n < length; ++n) {
    double arg = kTwoPi * phi * n;
    e(n) = {std::cos(arg), std::sin(arg)};
  }
  return e;
}

Eigen::VectorXd draw_cfo_plan(int segments, double phi_max, RngStream& rng) {
  if (segments < 1) throw std::invalid_argument("draw_cfo_plan: segments must be >= 1");
  if (!(phi_max >= 0.0) || phi_max >= 0.5)
    throw std::invalid_argument("draw_cfo_plan: phi_max must lie in [0, 0.5)");
  Eigen::VectorXd plan(segments);
  for (int k = 0; k < segments; ++k) plan(k) = rng.uniform(-phi_max, phi_max);
  return plan;
}

ReceivedTraining synthesize_received(const TrainingScenario& scn, const CVector& pilot,
                                     const Eigen::VectorXd& plan_bob,
                                     const std::optional<Eigen::VectorXd>& plan_eve,
                                     const CVector& channel_bob,
                                     const std::optional<CVector>& channel_eve,
                                     RngStream& rng) {
  scn.validate();
  const int M = scn.antennas;
  const int N = scn.pilot_length;
  const int K = scn.segments;
  const int Q = scn.segment_length();
  if (pilot.size() != N) throw std::invalid_argument("synthesize_received: pilot length != N");
  if (plan_bob.size() != K) throw std::invalid_argument("synthesize_received: Bob CFO plan length != K");
  if (channel_bob.size() != M) throw std::invalid_argument("synthesize_received: channel length != M");
  if (scn.attack) {
    if (!plan_eve || !channel_eve)
      throw std::invalid_argument("synthesize_received: attack requires Eve CFO plan and channel");
    if (plan_eve->size() != K) throw std::invalid_argument("synthesize_received: Eve CFO plan length != K");
    if (channel_eve->size() != M) throw std::invalid_argument("synthesize_received: Eve channel length != M");
  }

  ReceivedTraining out;
  out.scenario = scn;
  out.pilot = pilot;
  out.cfo_bob = plan_bob;
  out.channel_bob = channel_bob;
  if (scn.attack) {
    out.cfo_eve = *plan_eve;
    out.channel_eve = *channel_eve;
  }

  const double amp_bob = std::sqrt(scn.p_bob);
  const double amp_eve = scn.attack ? std::sqrt(scn.p_eve) : 0.0;
  const double sigma2 = scn.noise_var;

  out.segments.reserve(K);
  for (int k = 0; k < K; ++k) {
    CVector sk = pilot.segment(k * Q, Q);
    CVector xb = amp_bob * phase_ramp(plan_bob(k), Q).cwiseProduct(sk);
    CMatrix yk = xb * channel_bob.transpose();
    if (scn.attack) {
      CVector xe = amp_eve * phase_ramp((*plan_eve)(k), Q).cwiseProduct(sk);
      yk += xe * channel_eve->transpose();
    }
    RngStream noise = rng.substream(static_cast<std::uint64_t>(k));
    for (int m = 0; m < M; ++m)
      for (int q = 0; q < Q; ++q) yk(q, m) += noise.cgaussian(sigma2);
    out.segments.push_back(std::move(yk));
  }
  return out;
}

}  // namespace ufs
