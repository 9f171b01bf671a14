#pragma once

#include <complex>

namespace ufs {

struct MissBoundInput {
  double p_bob = 1.0;
  double p_eve = 1.0;
  double noise_var = 0.01;
  int antennas = 16;       // M
  int segment_length = 16; // Q
  int segments = 4;        // K
  double phi_max = 0.2;
};

// A probability that may have been clamped into [0, 1].
struct BoundResult {
  double value = 0.0;
  bool clamped = false;
};

// 3 sigma_n^2 / (2 pi^2 Q (Q^2 - 1) ||h||^2): high-SNR CFO estimation MSE.
double lemma1_cfo_mse(int segment_length, double noise_var, double h_norm_sq);

// (sigma_n^2 / N) ((3 / 8 pi^2)(Q-1)/(Q+1) + M): channel estimation MSE.
double lemma1_channel_mse(int pilot_length, int segment_length, int antennas,
                          double noise_var);

// M sigma_n^2 / N: frequency-synchronous channel estimation benchmark.
double sync_benchmark_mse(int antennas, int pilot_length, double noise_var);

// Correlation of Bob's and Eve's effective pilots at CFO difference delta_phi:
// (1 - e^{j 2 pi Q dphi}) / (Q (1 - e^{j 2 pi dphi})), exactly 1 at integer
// dphi. Always |rho| <= 1.
std::complex<double> rho(double delta_phi, int segment_length);

// det(P_k) = P_B P_E (1 - |rho|^2).
double pilot_correlation_det(double p_bob, double p_eve, std::complex<double> rho_val);

// P_th = M (Q^{1/Q} - 1) sigma_n^2.
double power_threshold(int antennas, int segment_length, double noise_var);

// Asymptotic miss-probability upper bound: 1 when min(P_B, P_E) <= P_th, else
// ((2 / (pi Q phi_max)) arccos sqrt((1 - P_th/P_B)(1 - P_th/P_E)))^K clamped
// into [0, 1].
BoundResult miss_prob_bound(const MissBoundInput& inp);

// Large-P_E lower bound: ((2 / (pi Q phi_max)) arccos sqrt(1 - P_th/P_B))^K;
// returns 1 when p_bob <= p_th.
BoundResult miss_prob_lower_bound(double p_bob, double p_th, int segment_length,
                                  double phi_max, int segments);

}  // namespace ufs
