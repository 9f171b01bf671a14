#include "ufs/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ufs {

namespace {
constexpr double kPi = 3.141592653589793238462643;
constexpr double kTwoPi = 2.0 * kPi;

BoundResult clamp_probability(double raw) {
  if (raw > 1.0) return {1.0, true};
  if (raw < 0.0) return {0.0, true};
  return {raw, false};
}
}  // namespace

double lemma1_cfo_mse(int segment_length, double noise_var, double h_norm_sq) {
  if (segment_length < 2) throw std::invalid_argument("lemma1_cfo_mse: Q must be >= 2");
  if (!(h_norm_sq > 0.0)) throw std::invalid_argument("lemma1_cfo_mse: ||h||^2 must be > 0");
  if (noise_var < 0.0) throw std::invalid_argument("lemma1_cfo_mse: noise_var must be >= 0");
  const double q = segment_length;
  return 3.0 * noise_var / (2.0 * kPi * kPi * q * (q * q - 1.0) * h_norm_sq);
}

double lemma1_channel_mse(int pilot_length, int segment_length, int antennas,
                          double noise_var) {
  if (pilot_length < 1 || segment_length < 1 || antennas < 1)
    throw std::invalid_argument("lemma1_channel_mse: dimensions must be >= 1");
  if (pilot_length % segment_length != 0)
    throw std::invalid_argument("lemma1_channel_mse: N must be a multiple of Q");
  if (noise_var < 0.0) throw std::invalid_argument("lemma1_channel_mse: noise_var must be >= 0");
  const double q = segment_length;
  return noise_var / pilot_length *
         (3.0 / (8.0 * kPi * kPi) * (q - 1.0) / (q + 1.0) + antennas);
}

double sync_benchmark_mse(int antennas, int pilot_length, double noise_var) {
  if (pilot_length < 1 || antennas < 1)
    throw std::invalid_argument("sync_benchmark_mse: dimensions must be >= 1");
  return antennas * noise_var / pilot_length;
}

std::complex<double> rho(double delta_phi, int segment_length) {
  if (segment_length < 1) throw std::invalid_argument("rho: Q must be >= 1");
  const double q = segment_length;
  if (delta_phi == std::round(delta_phi)) return {1.0, 0.0};
  // Both exponentials are 1-periodic in their phase argument; reduce to
  // [-0.5, 0.5] before calling polar to keep the angles small and accurate.
  auto frac = [](double x) { return x - std::round(x); };
  const std::complex<double> num =
      1.0 - std::polar(1.0, kTwoPi * frac(q * delta_phi));
  const std::complex<double> den =
      q * (1.0 - std::polar(1.0, kTwoPi * frac(delta_phi)));
  return num / den;
}

double pilot_correlation_det(double p_bob, double p_eve, std::complex<double> rho_val) {
  return p_bob * p_eve * (1.0 - std::norm(rho_val));
}

double power_threshold(int antennas, int segment_length, double noise_var) {
  if (segment_length < 2) throw std::invalid_argument("power_threshold: Q must be >= 2");
  if (antennas < 1) throw std::invalid_argument("power_threshold: M must be >= 1");
  const double q = segment_length;
  return antennas * (std::exp(std::log(q) / q) - 1.0) * noise_var;
}

BoundResult miss_prob_bound(const MissBoundInput& inp) {
  if (!(inp.phi_max > 0.0)) throw std::invalid_argument("miss_prob_bound: phi_max must be > 0");
  const double p_th = power_threshold(inp.antennas, inp.segment_length, inp.noise_var);
  if (std::min(inp.p_bob, inp.p_eve) <= p_th) return {1.0, false};
  double arg = (1.0 - p_th / inp.p_bob) * (1.0 - p_th / inp.p_eve);
  arg = std::clamp(arg, 0.0, 1.0);
  const double per_segment =
      2.0 / (kPi * inp.segment_length * inp.phi_max) * std::acos(std::sqrt(arg));
  return clamp_probability(std::pow(per_segment, inp.segments));
}

BoundResult miss_prob_lower_bound(double p_bob, double p_th, int segment_length,
                                  double phi_max, int segments) {
  if (!(phi_max > 0.0))
    throw std::invalid_argument("miss_prob_lower_bound: phi_max must be > 0");
  if (p_bob <= p_th) return {1.0, false};
  double arg = std::clamp(1.0 - p_th / p_bob, 0.0, 1.0);
  const double per_segment =
      2.0 / (kPi * segment_length * phi_max) * std::acos(std::sqrt(arg));
  return clamp_probability(std::pow(per_segment, segments));
}

}  // namespace ufs
