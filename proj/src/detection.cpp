#include "ufs/detection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ufs {

namespace {
constexpr double kEigFloor = 1e-30;
}

CMatrix segment_autocorrelation(const CMatrix& segment) {
  const int q = static_cast<int>(segment.rows());
  if (q < 1) throw std::invalid_argument("segment_autocorrelation: empty segment");
  CMatrix r = (segment.transpose() * segment.conjugate()) / static_cast<double>(q);
  // Symmetrize away rounding residue.
  return 0.5 * (r + r.adjoint());
}

SegmentSpectrum hermitian_eigvals_desc(const CMatrix& matrix, int sample_count) {
  if (matrix.rows() != matrix.cols())
    throw std::invalid_argument("hermitian_eigvals_desc: matrix must be square");
  const double scale = std::max(matrix.cwiseAbs().maxCoeff(), 1e-300);
  const double herm_err = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > 1e-10 * scale)
    throw std::invalid_argument("hermitian_eigvals_desc: input is not Hermitian");

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigvals_desc: eigensolver failed to converge");

  Eigen::VectorXd ev = solver.eigenvalues().reverse();  // descending
  const double lead = std::max(ev(0), 0.0);
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) < -1e-10 * lead)
      throw std::invalid_argument("hermitian_eigvals_desc: significantly negative eigenvalue");
    if (ev(i) < 0.0) ev(i) = 0.0;
  }
  return SegmentSpectrum{std::move(ev), sample_count};
}

double mdl_score(const SegmentSpectrum& spectrum, int d) {
  const int m = static_cast<int>(spectrum.eigenvalues.size());
  const int q = spectrum.sample_count;
  if (d < 1 || d > m - 1) throw std::invalid_argument("mdl_score: d out of range [1, M-1]");
  double log_sum = 0.0;
  double tail_sum = 0.0;
  for (int i = d; i < m; ++i) {
    double lam = std::max(spectrum.eigenvalues(i), kEigFloor);
    log_sum += std::log(lam);
    tail_sum += lam;
  }
  const double tail_mean = tail_sum / (m - d);
  const double penalty = d * (2.0 * m - d) * std::log(static_cast<double>(q)) / (2.0 * q);
  return -log_sum + (m - d) * std::log(tail_mean) + penalty;
}

int estimate_subspace_dim(const SegmentSpectrum& spectrum) {
  const int m = static_cast<int>(spectrum.eigenvalues.size());
  const int q = spectrum.sample_count;
  if (m < 3) throw std::invalid_argument("estimate_subspace_dim: requires M >= 3");
  if (q < m) throw std::invalid_argument("estimate_subspace_dim: requires Q >= M");
  int best_d = 1;
  double best_score = mdl_score(spectrum, 1);
  for (int d = 2; d <= m - 1; ++d) {
    double score = mdl_score(spectrum, d);
    if (score < best_score) {
      best_score = score;
      best_d = d;
    }
  }
  return best_d;
}

DetectionOutcome detect_attack(const ReceivedTraining& received) {
  DetectionOutcome out;
  out.dims.reserve(received.segments.size());
  for (const CMatrix& yk : received.segments) {
    SegmentSpectrum spec =
        hermitian_eigvals_desc(segment_autocorrelation(yk), static_cast<int>(yk.rows()));
    out.dims.push_back(estimate_subspace_dim(spec));
  }
  out.attack_detected = false;
  for (int d : out.dims)
    if (d > 1) out.attack_detected = true;
  return out;
}

}  // namespace ufs
