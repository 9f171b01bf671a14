#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "ufs/rng.hpp"

namespace ufs {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Uplink training-phase parameters. Powers and noise variance are linear.
struct TrainingScenario {
  int antennas = 16;       // M
  int pilot_length = 64;   // N
  int segments = 4;        // K
  double p_bob = 1.0;      // P_B
  double p_eve = 1.0;      // P_E (ignored when attack == false)
  double noise_var = 0.01; // sigma_n^2
  double phi_max = 0.2;    // max |normalized CFO|, must be < 0.5
  bool attack = false;     // H1 when true

  int segment_length() const { return pilot_length / segments; }  // Q

  // Throws std::invalid_argument on any violated constraint.
  void validate() const;
};

// Per-segment received training block plus the ground truth that produced it.
struct ReceivedTraining {
  TrainingScenario scenario;
  std::vector<CMatrix> segments;  // K matrices, each Q x M
  CVector pilot;                  // length N, unit modulus
  Eigen::VectorXd cfo_bob;        // length K
  std::optional<Eigen::VectorXd> cfo_eve;
  CVector channel_bob;            // h, length M
  std::optional<CVector> channel_eve;  // g
};

// h or g: entries i.i.d. CN(0, 1/M) so E[||h||^2] = 1.
CVector gen_channel(int antennas, RngStream& rng);

// Unit-modulus QPSK pilot, symbols uniform over {(+-1 +-j)/sqrt(2)}.
CVector gen_qpsk_pilot(int length, RngStream& rng);

// Entry n of the result is exp(j 2 pi phi n), n = 0..length-1.
CVector phase_ramp(double phi, int length);

// K i.i.d. uniform draws on [-phi_max, phi_max]; requires phi_max in [0, 0.5).
Eigen::VectorXd draw_cfo_plan(int segments, double phi_max, RngStream& rng);

// Synthesizes Y_k = sqrt(P_B) diag(ramp(phi_Bk)) s_k h^T
//                 [+ sqrt(P_E) diag(ramp(phi_Ek)) s_k g^T] + N_k
// for every segment. The phase ramp restarts at n = 0 in each segment, and
// noise is drawn column-major from a segment-specific substream of rng.
ReceivedTraining synthesize_received(const TrainingScenario& scn, const CVector& pilot,
                                     const Eigen::VectorXd& plan_bob,
                                     const std::optional<Eigen::VectorXd>& plan_eve,
                                     const CVector& channel_bob,
                                     const std::optional<CVector>& channel_eve,
                                     RngStream& rng);

}  // namespace ufs
