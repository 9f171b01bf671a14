#include "ufs/estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace ufs {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

// J(phi) = || s^H diag(ramp(phi))^H Y ||^2.
double correlation_objective(const CMatrix& y, const CVector& s, double phi) {
  const int q = static_cast<int>(y.rows());
  CVector w(q);
  for (int n = 0; n < q; ++n) {
    double arg = -kTwoPi * phi * n;
    w(n) = std::conj(s(n)) * std::complex<double>(std::cos(arg), std::sin(arg));
  }
  return (y.transpose() * w).squaredNorm();
}

// Brent-style maximizer of f over [a, b] (parabolic steps on the log
// objective, golden-section fallback), capped at 30 iterations.
double refine_maximum(const CMatrix& y, const CVector& s, double a, double b,
                      double x0, double tol) {
  auto f = [&](double phi) {
    return std::log(correlation_objective(y, s, phi) + 1e-300);
  };
  const double golden = 0.3819660112501051;
  double x = x0, w = x0, v = x0;
  double fx = f(x), fw = fx, fv = fx;
  double d = 0.0, e = 0.0;

  for (int iter = 0; iter < 30; ++iter) {
    const double xm = 0.5 * (a + b);
    const double tol1 = tol * std::abs(x) + 1e-12;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) break;

    bool parabolic_ok = false;
    if (std::abs(e) > tol1) {
      // Trial parabola through (v, w, x).
      double r = (x - w) * (fx - fv);
      double qd = (x - v) * (fx - fw);
      double p = (x - v) * qd - (x - w) * r;
      qd = 2.0 * (qd - r);
      if (qd > 0.0) p = -p;
      qd = std::abs(qd);
      double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * qd * e_prev) && p > qd * (a - x) &&
          p < qd * (b - x)) {
        d = p / qd;
        double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (xm > x) ? tol1 : -tol1;
        parabolic_ok = true;
      }
    }
    if (!parabolic_ok) {
      e = (x >= xm) ? a - x : b - x;
      d = golden * e;
    }
    const double u = (std::abs(d) >= tol1) ? x + d : x + ((d > 0.0) ? tol1 : -tol1);
    const double fu = f(u);
    if (fu >= fx) {
      if (u >= x) a = x; else b = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu >= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu >= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return x;
}

}  // namespace

double wrap_cfo(double phi) {
  double w = phi - std::floor(phi + 0.5);  // (-0.5, 0.5] up to the floor edge
  if (w <= -0.5) w += 1.0;
  return w;
}

std::pair<double, double> estimate_cfo_segment(const CMatrix& segment,
                                               const CVector& pilot_segment,
                                               const GridSearchConfig& cfg) {
  const int q = static_cast<int>(segment.rows());
  if (q < 2) throw std::invalid_argument("estimate_cfo_segment: Q must be >= 2");
  if (pilot_segment.size() != q)
    throw std::invalid_argument("estimate_cfo_segment: pilot segment length != Q");
  if (cfg.coarse_step < 0.0 || cfg.refine_tol <= 0.0)
    throw std::invalid_argument("estimate_cfo_segment: invalid search configuration");

  const double step = (cfg.coarse_step > 0.0) ? cfg.coarse_step : 1.0 / (8.0 * q);
  const double range = cfg.search_range;
  const int points = std::max(1, static_cast<int>(std::llround(2.0 * range / step)));

  double best_phi = 0.0;
  double best_obj = -1.0;
  for (int i = 0; i < points; ++i) {
    // Open at -range, closed at +range.
    const double phi = -range + (i + 1) * (2.0 * range / points);
    const double obj = correlation_objective(segment, pilot_segment, phi);
    if (obj > best_obj) {
      best_obj = obj;
      best_phi = phi;
    }
  }

  const double half = 2.0 * range / points;
  double phi_hat = refine_maximum(segment, pilot_segment, best_phi - half,
                                  best_phi + half, best_phi, cfg.refine_tol);
  double obj_hat = correlation_objective(segment, pilot_segment, phi_hat);
  // Refinement must never lose to the grid winner.
  if (obj_hat < best_obj) {
    phi_hat = best_phi;
    obj_hat = best_obj;
  }
  return {wrap_cfo(phi_hat), obj_hat};
}

CfoEstimate estimate_cfo(const ReceivedTraining& received, const GridSearchConfig& cfg) {
  const int k = static_cast<int>(received.segments.size());
  const int q = received.scenario.segment_length();
  CfoEstimate est;
  est.per_segment.resize(k);
  est.objective.resize(k);
  for (int i = 0; i < k; ++i) {
    CVector sk = received.pilot.segment(i * q, q);
    auto [phi, obj] = estimate_cfo_segment(received.segments[i], sk, cfg);
    est.per_segment(i) = phi;
    est.objective(i) = obj;
  }
  return est;
}

ChannelEstimate estimate_channel(const ReceivedTraining& received, const CfoEstimate& cfo) {
  const int k = static_cast<int>(received.segments.size());
  const int q = received.scenario.segment_length();
  const int n = received.scenario.pilot_length;
  const int m = received.scenario.antennas;
  if (cfo.per_segment.size() != k)
    throw std::invalid_argument("estimate_channel: CFO estimate count != K");

  Eigen::RowVectorXcd h_row = Eigen::RowVectorXcd::Zero(m);
  for (int i = 0; i < k; ++i) {
    const CMatrix& yk = received.segments[i];
    if (yk.rows() != q || yk.cols() != m)
      throw std::invalid_argument("estimate_channel: segment dimensions mismatch");
    CVector sk = received.pilot.segment(i * q, q);
    CVector w(q);
    for (int j = 0; j < q; ++j) {
      double arg = -kTwoPi * cfo.per_segment(i) * j;
      w(j) = std::conj(sk(j)) * std::complex<double>(std::cos(arg), std::sin(arg));
    }
    h_row += (yk.transpose() * w).transpose();
  }
  h_row /= n * std::sqrt(received.scenario.p_bob);
  return ChannelEstimate{h_row.transpose()};
}

double mse(const CVector& estimate, const CVector& truth) {
  if (estimate.size() != truth.size()) throw std::invalid_argument("mse: length mismatch");
  return (estimate - truth).squaredNorm();
}

}  // namespace ufs
