#pragma once

#include <optional>

#include "meshfwd/link_dynamics.hpp"

namespace meshfwd {

// Newton-form coefficients over a link history:
//   b(t) = alpha0 + alpha1*(t - t0) + alpha2*(t - t1)*(t - t0)
// Higher-order terms exist only when the history holds enough samples.
struct Coefficients {
  double alpha0 = 0.0;
  std::optional<double> alpha1;
  std::optional<double> alpha2;
  double t0 = 0.0;
  std::optional<double> t1;
};

// Divided differences of the history samples (first sample anchors t0).
// Throws std::invalid_argument on an empty history or duplicate timestamps.
Coefficients divided_coefficients(const History3& history);

// Newton-form value at time t; no clamping.
double extrapolate(const Coefficients& coeffs, double t);

// Predicted bandwidth at t_p, clamped to be non-negative. Histories with one
// or two samples degrade to constant or linear prediction. Throws
// std::invalid_argument when the history is empty or t_p precedes the newest
// sample.
double predict_bandwidth(const History3& history, double t_p);

}  // namespace meshfwd
