#pragma once

#include <Eigen/Dense>

#include "ufs/signal_model.hpp"

namespace ufs {

struct GridSearchConfig {
  double coarse_step = 0.0;   // grid spacing; 0 means auto: 1/(8Q)
  double refine_tol = 1e-8;   // stopping tolerance of the local refinement
  double search_range = 0.5;  // search over (-range, range]
};

struct CfoEstimate {
  Eigen::VectorXd per_segment;  // phi_hat_{B,k}, each in (-0.5, 0.5]
  Eigen::VectorXd objective;    // attained correlation value per segment
};

struct ChannelEstimate {
  CVector coefficients;  // h_hat, length M
};

// ML single-user CFO estimate for one segment: maximizes
// J(phi) = || s_k^H diag(ramp(phi))^H Y_k ||^2 by exhaustive coarse grid
// followed by parabolic refinement (golden fallback) around the best point.
// Returns (phi_hat, J(phi_hat)). Requires Q >= 2.
std::pair<double, double> estimate_cfo_segment(const CMatrix& segment,
                                               const CVector& pilot_segment,
                                               const GridSearchConfig& cfg = {});

// Runs estimate_cfo_segment on every segment of a received block.
CfoEstimate estimate_cfo(const ReceivedTraining& received,
                         const GridSearchConfig& cfg = {});

// h_hat^T = (1 / (N sqrt(P_B))) sum_k s_k^H diag(ramp(phi_hat_k))^H Y_k.
// The 1/sqrt(P_B) factor makes the estimate target h rather than sqrt(P_B) h.
ChannelEstimate estimate_channel(const ReceivedTraining& received,
                                 const CfoEstimate& cfo);

// Squared Frobenius distance ||estimate - truth||^2 of one trial.
double mse(const CVector& estimate, const CVector& truth);

// Wraps a normalized CFO into (-0.5, 0.5].
double wrap_cfo(double phi);

}  // namespace ufs
