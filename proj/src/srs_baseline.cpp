#include "ufs/srs_baseline.hpp"

#include <cmath>
#include <stdexcept>

namespace ufs {

void SrsConfig::validate() const {
  if (!(beta > 0.0) || !(beta < 1.0))
    throw std::invalid_argument("SrsConfig: beta must lie in (0, 1)");
  if (est_iters < 1) throw std::invalid_argument("SrsConfig: est_iters must be >= 1");
}

CVector srs_transmit(const CVector& pilot, const SrsConfig& cfg, double p_bob,
                     RngStream& rng) {
  cfg.validate();
  if (!(p_bob > 0.0)) throw std::invalid_argument("srs_transmit: p_bob must be > 0");
  const int n = static_cast<int>(pilot.size());
  const double a_pilot = std::sqrt(p_bob * (1.0 - cfg.beta));
  const double a_seq = std::sqrt(p_bob * cfg.beta);
  CVector x(n);
  for (int i = 0; i < n; ++i) x(i) = a_pilot * pilot(i) + a_seq * rng.cgaussian(1.0);
  return x;
}

DetectionOutcome srs_detect(const CMatrix& received) {
  const int n = static_cast<int>(received.rows());
  const int m = static_cast<int>(received.cols());
  if (m < 3) throw std::invalid_argument("srs_detect: requires M >= 3");
  if (n < m) throw std::invalid_argument("srs_detect: requires N >= M");
  SegmentSpectrum spec = hermitian_eigvals_desc(segment_autocorrelation(received), n);
  DetectionOutcome out;
  out.dims.push_back(estimate_subspace_dim(spec));
  out.attack_detected = out.dims[0] > 1;
  return out;
}

ChannelEstimate srs_estimate_channel(const CMatrix& received, const CVector& pilot,
                                     const SrsConfig& cfg, double p_bob,
                                     const std::optional<CVector>& known_sequence) {
  cfg.validate();
  const int n = static_cast<int>(received.rows());
  const int m = static_cast<int>(received.cols());
  if (pilot.size() != n) throw std::invalid_argument("srs_estimate_channel: pilot length != N");
  if (known_sequence && known_sequence->size() != n)
    throw std::invalid_argument("srs_estimate_channel: sequence length != N");

  const double a_pilot = std::sqrt(p_bob * (1.0 - cfg.beta));
  const double a_seq = std::sqrt(p_bob * cfg.beta);
  CVector c_hat = known_sequence ? *known_sequence : CVector::Zero(n);
  Eigen::RowVectorXcd h_row(m);

  for (int iter = 0; iter < cfg.est_iters; ++iter) {
    // LS channel fit against the current composite signature.
    CVector x_hat = a_pilot * pilot + a_seq * c_hat;
    h_row = (x_hat.adjoint() * received) / x_hat.squaredNorm();
    const double h_norm_sq = h_row.squaredNorm();
    if (h_norm_sq < 1e-24)
      throw std::runtime_error("srs_estimate_channel: channel estimate collapsed");
    // LS sequence fit from the pilot-cancelled residual.
    CMatrix residual = received - a_pilot * pilot * h_row;
    c_hat = (residual * h_row.adjoint()) / (a_seq * h_norm_sq);
  }

  CVector x_hat = a_pilot * pilot + a_seq * c_hat;
  h_row = (x_hat.adjoint() * received) / x_hat.squaredNorm();
  return ChannelEstimate{h_row.transpose()};
}

}  // namespace ufs
