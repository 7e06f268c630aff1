#pragma once

#include <cmath>

namespace awh {

/// One point of the estimated curve lambda -> pi(G <= lambda).
/// `log_prob` is the natural log, kept separately so tails near 1e-13 and
/// below never round through the linear value.
struct CurvePoint {
  double lambda = 0.0;
  double log_prob = 0.0;
  double prob = 1.0;

  static CurvePoint from_log(double lambda, double log_prob) {
    return {lambda, log_prob, std::exp(log_prob)};
  }
};

}  // namespace awh
