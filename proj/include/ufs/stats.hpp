#pragma once

#include <utility>

namespace ufs {

// Quantile of the standard normal distribution (probit). Acklam's rational
// approximation polished with one Halley step, accurate to ~1e-15.
double normal_quantile(double p);

// Wilson score interval for a binomial proportion at the given two-sided
// confidence level, e.g. 0.95.
std::pair<double, double> wilson_interval(long successes, long trials, double confidence);

}  // namespace ufs
