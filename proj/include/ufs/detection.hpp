#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ufs/signal_model.hpp"

namespace ufs {

// Descending eigenvalues of a segment autocorrelation matrix.
struct SegmentSpectrum {
  Eigen::VectorXd eigenvalues;  // lambda(1) >= ... >= lambda(M) >= 0
  int sample_count = 0;         // Q
};

struct DetectionOutcome {
  std::vector<int> dims;  // per-segment d_hat in [1, M-1]
  bool attack_detected = false;
};

// R_hat = (1/Q) Y^T Y^*, Hermitian PSD, trace = ||Y||^2 / Q.
CMatrix segment_autocorrelation(const CMatrix& segment);

// All eigenvalues of a Hermitian matrix, sorted descending. Rejects inputs
// that are non-Hermitian beyond 1e-10 relative tolerance. Eigenvalues more
// negative than -1e-10 * lambda_max are rejected; smaller negatives are
// clamped to zero.
SegmentSpectrum hermitian_eigvals_desc(const CMatrix& matrix, int sample_count);

// The MDL criterion at candidate dimension d, exactly as printed:
//   -sum_{i>d} log lambda(i) + (M-d) log(mean of the tail) + d(2M-d) log(Q)/(2Q).
// Eigenvalues are floored at 1e-30 before any log.
double mdl_score(const SegmentSpectrum& spectrum, int d);

// argmin of mdl_score over d in {1, ..., M-1}; ties break toward smaller d.
// Requires M >= 3 and Q >= M.
int estimate_subspace_dim(const SegmentSpectrum& spectrum);

// Runs the full per-segment pipeline; attack declared iff max_k d_hat_k > 1.
DetectionOutcome detect_attack(const ReceivedTraining& received);

}  // namespace ufs
