#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include <doctest.h>

#include "meshfwd/predictor.hpp"
#include "meshfwd/rng.hpp"
#include "support/oracles.hpp"

using namespace meshfwd;

namespace {

History3 history_of(std::vector<std::pair<double, double>> samples) {
  History3 h;
  for (const auto& [t, b] : samples) {
    h.append({t, b});
  }
  return h;
}

std::vector<std::pair<double, double>> as_points(const History3& h) {
  std::vector<std::pair<double, double>> pts;
  for (const BandwidthSample& s : h) {
    pts.emplace_back(s.t, s.b);
  }
  return pts;
}

bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

// Random 3-sample history with distinct times in [0, 100] and values in [0, 100].
History3 random_history(Rng& rng) {
  double t0 = rng.uniform(0, 100);
  double t1 = rng.uniform(0, 100);
  double t2 = rng.uniform(0, 100);
  std::vector<double> ts{t0, t1, t2};
  std::sort(ts.begin(), ts.end());
  while (ts[0] == ts[1] || ts[1] == ts[2]) {
    ts = {rng.uniform(0, 100), rng.uniform(0, 100), rng.uniform(0, 100)};
    std::sort(ts.begin(), ts.end());
  }
  return history_of({{ts[0], rng.uniform(0, 100)},
                     {ts[1], rng.uniform(0, 100)},
                     {ts[2], rng.uniform(0, 100)}});
}

}  // namespace

TEST_CASE("divided coefficients on constant, linear and quadratic data") {
  const Coefficients constant = divided_coefficients(history_of({{0, 5}, {1, 5}, {2, 5}}));
  CHECK(constant.alpha0 == 5.0);
  CHECK(*constant.alpha1 == 0.0);
  CHECK(*constant.alpha2 == 0.0);

  const Coefficients linear = divided_coefficients(history_of({{0, 0}, {1, 2}, {2, 4}}));
  CHECK(linear.alpha0 == 0.0);
  CHECK(*linear.alpha1 == 2.0);
  CHECK(*linear.alpha2 == 0.0);

  // t^2 through (0,0), (1,1), (3,9)
  const Coefficients quad = divided_coefficients(history_of({{0, 0}, {1, 1}, {3, 9}}));
  CHECK(quad.alpha0 == 0.0);
  CHECK(*quad.alpha1 == 1.0);
  CHECK(*quad.alpha2 == 1.0);
  CHECK(quad.t0 == 0.0);
  CHECK(*quad.t1 == 1.0);
}

TEST_CASE("coefficients reproduce the samples they came from") {
  Rng rng(41);
  for (int i = 0; i < 1'000; ++i) {
    const History3 h = random_history(rng);
    const Coefficients c = divided_coefficients(h);
    for (const BandwidthSample& s : h) {
      CHECK(close_rel(extrapolate(c, s.t), s.b, 1e-9));
    }
  }
}

TEST_CASE("prediction on the module examples") {
  CHECK(predict_bandwidth(history_of({{0, 5}, {1, 5}, {2, 5}}), 7) ==
        doctest::Approx(5.0).epsilon(1e-9));
  CHECK(predict_bandwidth(history_of({{0, 0}, {1, 2}, {2, 4}}), 3) ==
        doctest::Approx(6.0).epsilon(1e-9));
  CHECK(predict_bandwidth(history_of({{0, 0}, {1, 1}, {2, 4}}), 3) ==
        doctest::Approx(9.0).epsilon(1e-9));
  // linear extrapolation reaches -5, clamped to zero
  CHECK(predict_bandwidth(history_of({{0, 10}, {1, 5}, {2, 0}}), 3) == 0.0);
}

TEST_CASE("short histories degrade to constant and linear prediction") {
  CHECK(predict_bandwidth(history_of({{2, 7}}), 100) == 7.0);
  CHECK(predict_bandwidth(history_of({{0, 1}, {2, 5}}), 3) ==
        doctest::Approx(7.0).epsilon(1e-9));
}

TEST_CASE("predictor error paths") {
  CHECK_THROWS_AS(divided_coefficients(History3{}), std::invalid_argument);
  CHECK_THROWS_AS(predict_bandwidth(History3{}, 1.0), std::invalid_argument);
  // t_p before the newest sample
  CHECK_THROWS_AS(predict_bandwidth(history_of({{0, 1}, {1, 2}}), 0.5),
                  std::invalid_argument);
  // duplicate timestamps cannot enter a history
  History3 h = history_of({{1, 2}});
  CHECK_THROWS_AS(h.append({1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(h.append({0.5, 3}), std::invalid_argument);
}

TEST_CASE("prediction matches the Lagrange oracle") {
  Rng rng(2024);
  for (int i = 0; i < 10'000; ++i) {
    const History3 h = random_history(rng);
    const double t_p = h.newest().t + rng.uniform(0, 50);
    const double predicted = extrapolate(divided_coefficients(h), t_p);
    const double expected = oracles::lagrange_eval(as_points(h), t_p);
    CHECK(close_rel(predicted, expected, 1e-9));
  }
}

TEST_CASE("prediction is never negative") {
  Rng rng(5);
  for (int i = 0; i < 10'000; ++i) {
    const History3 h = random_history(rng);
    const double t_p = h.newest().t + rng.uniform(0, 200);
    CHECK(predict_bandwidth(h, t_p) >= 0.0);
  }
}

TEST_CASE("prediction is invariant under time translation") {
  Rng rng(6);
  for (int i = 0; i < 5'000; ++i) {
    const History3 h = random_history(rng);
    const double t_p = h.newest().t + rng.uniform(0, 50);
    const double shift = rng.uniform(0, 1000);
    History3 shifted;
    for (const BandwidthSample& s : h) {
      shifted.append({s.t + shift, s.b});
    }
    CHECK(close_rel(predict_bandwidth(h, t_p), predict_bandwidth(shifted, t_p + shift),
                    1e-9));
  }
}
