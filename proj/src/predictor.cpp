#include "meshfwd/predictor.hpp"

#include <algorithm>
#include <stdexcept>

namespace meshfwd {

Coefficients divided_coefficients(const History3& history) {
  if (history.empty()) {
    throw std::invalid_argument("predictor: empty history");
  }
  Coefficients c;
  c.alpha0 = history[0].b;
  c.t0 = history[0].t;
  if (history.size() >= 2) {
    const double dt10 = history[1].t - history[0].t;
    if (dt10 == 0.0) {
      throw std::invalid_argument("predictor: duplicate timestamps");
    }
    c.t1 = history[1].t;
    c.alpha1 = (history[1].b - history[0].b) / dt10;
  }
  if (history.size() >= 3) {
    const double dt21 = history[2].t - history[1].t;
    const double dt20 = history[2].t - history[0].t;
    if (dt21 == 0.0 || dt20 == 0.0) {
      throw std::invalid_argument("predictor: duplicate timestamps");
    }
    const double slope12 = (history[2].b - history[1].b) / dt21;
    c.alpha2 = (slope12 - *c.alpha1) / dt20;
  }
  return c;
}

double extrapolate(const Coefficients& coeffs, double t) {
  double value = coeffs.alpha0;
  if (coeffs.alpha1) {
    value += *coeffs.alpha1 * (t - coeffs.t0);
  }
  if (coeffs.alpha2) {
    value += *coeffs.alpha2 * (t - *coeffs.t1) * (t - coeffs.t0);
  }
  return value;
}

double predict_bandwidth(const History3& history, double t_p) {
  if (history.empty()) {
    throw std::invalid_argument("predictor: empty history");
  }
  if (t_p < history.newest().t) {
    throw std::invalid_argument("predictor: t_p precedes the newest sample");
  }
  return std::max(extrapolate(divided_coefficients(history), t_p), 0.0);
}

}  // namespace meshfwd
