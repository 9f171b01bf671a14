#pragma once

#include <Eigen/Dense>
#include <optional>

#include "ufs/detection.hpp"
#include "ufs/estimation.hpp"
#include "ufs/signal_model.hpp"

namespace ufs {

// Superimposed-random-sequence MDL baseline. Bob splits his power between the
// known pilot and a private random sequence; an attacker replaying the plain
// pilot adds a second, non-proportional temporal signature.
struct SrsConfig {
  double beta = 0.5;  // superimposed-power fraction, in (0, 1)
  int est_iters = 3;  // alternating channel/sequence estimation rounds

  void validate() const;
};

// x(n) = sqrt(P_B) (sqrt(1-beta) s(n) + sqrt(beta) c(n)), c i.i.d. CN(0, 1).
// Expected per-symbol transmit power is P_B for every beta.
CVector srs_transmit(const CVector& pilot, const SrsConfig& cfg, double p_bob,
                     RngStream& rng);

// MDL source enumeration on the whole N x M block: R_hat = (1/N) Y^T Y^*.
// Requires M >= 3 and N >= M.
DetectionOutcome srs_detect(const CMatrix& received);

// Alternating least squares: correlate against the known pilot component,
// fit the superimposed sequence from the residual, cancel, repeat. An
// optional known sequence seeds the iteration (used for oracle tests).
ChannelEstimate srs_estimate_channel(const CMatrix& received, const CVector& pilot,
                                     const SrsConfig& cfg, double p_bob,
                                     const std::optional<CVector>& known_sequence = std::nullopt);

}  // namespace ufs
