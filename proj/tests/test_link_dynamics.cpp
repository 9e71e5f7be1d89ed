#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "meshfwd/link_dynamics.hpp"

using namespace meshfwd;

namespace {

// First stochastic change pushed far beyond any horizon the tests reach.
constexpr double kNever = 1e15;

LinkProcessConfig static_config() {
  return {2.0, 8.0, kNever, DriftMode::ResampleUniform};
}

}  // namespace

TEST_CASE("history keeps the last three samples with increasing times") {
  History3 h;
  h.append({0, 1});
  h.append({1, 2});
  h.append({2, 3});
  REQUIRE(h.size() == 3);
  h.append({5, 9});
  REQUIRE(h.size() == 3);
  CHECK(h[0] == BandwidthSample{1, 2});
  CHECK(h[1] == BandwidthSample{2, 3});
  CHECK(h[2] == BandwidthSample{5, 9});
  CHECK(h.newest() == BandwidthSample{5, 9});

  CHECK_THROWS_AS(h.append({5, 1}), std::invalid_argument);
  CHECK_THROWS_AS(h.append({4, 1}), std::invalid_argument);
  CHECK_THROWS_AS(h.append({6, -1}), std::invalid_argument);
  CHECK_THROWS_AS(History3{}.newest(), std::invalid_argument);
}

TEST_CASE("link config validation") {
  CHECK_THROWS_AS(validate(LinkProcessConfig{1, 1, 10, DriftMode::ResampleUniform}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(LinkProcessConfig{5, 2, 10, DriftMode::ResampleUniform}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(LinkProcessConfig{-1, 2, 10, DriftMode::ResampleUniform}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(LinkProcessConfig{1, 2, 0, DriftMode::ResampleUniform}),
                  std::invalid_argument);
  CHECK_NOTHROW(validate(LinkProcessConfig{0, 2, 10, DriftMode::LinearDrift}));

  CHECK_THROWS_AS(init_links(generate_topology(5, 10, 10, 20, 1),
                             LinkProcessConfig{1, 1, 10, DriftMode::ResampleUniform}, 1),
                  std::invalid_argument);
}

TEST_CASE("init gives every link one sample at t=0 within bounds") {
  const Topology topo = generate_topology(30, 50, 50, 20, 3);
  const NetworkState state = init_links(topo, {2, 8, 50, DriftMode::ResampleUniform}, 9);
  CHECK(state.clock() == 0.0);
  REQUIRE(state.link_count() > 0);
  for (const LinkState& link : state.links()) {
    REQUIRE(link.history.size() == 1);
    CHECK(link.history[0].t == 0.0);
    CHECK(link.history[0].b == link.value);
    CHECK(link.value >= 2.0);
    CHECK(link.value <= 8.0);
    CHECK(state.actual_bandwidth(link.u, link.v) == link.value);
  }
}

TEST_CASE("equal seeds give equal states, and copies track originals") {
  const Topology topo = generate_topology(20, 60, 60, 25, 5);
  const LinkProcessConfig config{1, 10, 20, DriftMode::LinearDrift};
  NetworkState a = init_links(topo, config, 77);
  NetworkState b = init_links(topo, config, 77);
  CHECK(a == b);
  a.advance_to(500);
  b.advance_to(500);
  CHECK(a == b);

  NetworkState c = a;
  CHECK(c == a);
  c.advance_to(700);
  CHECK(c != a);
  a.advance_to(700);
  CHECK(c == a);
}

TEST_CASE("advance_to the current clock changes nothing") {
  NetworkState state = init_links(generate_topology(10, 30, 30, 15, 2),
                                  {1, 5, 30, DriftMode::ResampleUniform}, 4);
  state.advance_to(100);
  const NetworkState before = state;
  state.advance_to(100);
  CHECK(state == before);
  CHECK(state.clock() == 100.0);
  CHECK_THROWS_AS(state.advance_to(99.9), std::invalid_argument);
  CHECK_THROWS_AS(state.advance_to(std::nan("")), std::invalid_argument);
}

TEST_CASE("histories fill to three samples after many dwells") {
  NetworkState state = init_links(generate_topology(15, 40, 40, 18, 6),
                                  {1, 9, 10, DriftMode::ResampleUniform}, 8);
  state.advance_to(10'000);  // a thousand mean dwells
  for (const LinkState& link : state.links()) {
    REQUIRE(link.history.size() == 3);
    CHECK(link.history[0].t > 0.0);  // the t=0 sample was evicted
    CHECK(link.history[0].t < link.history[1].t);
    CHECK(link.history[1].t < link.history[2].t);
  }
}

TEST_CASE("produced bandwidths stay inside the configured bounds") {
  for (DriftMode mode : {DriftMode::ResampleUniform, DriftMode::LinearDrift}) {
    NetworkState state = init_links(generate_topology(12, 40, 40, 20, 13),
                                    {2, 6, 15, mode}, 21);
    for (int step = 1; step <= 40; ++step) {
      state.advance_to(step * 37.5);
      for (const LinkState& link : state.links()) {
        for (const BandwidthSample& s : link.history) {
          CHECK(s.b >= 2.0);
          CHECK(s.b <= 6.0);
        }
        const double now = state.actual_bandwidth(link.u, link.v);
        CHECK(now >= 2.0);
        CHECK(now <= 6.0);
      }
    }
  }
}

TEST_CASE("resample mode holds the newest sample between changes") {
  NetworkState state = init_links(generate_topology(10, 30, 30, 18, 17),
                                  {1, 7, 25, DriftMode::ResampleUniform}, 30);
  for (int step = 1; step <= 30; ++step) {
    state.advance_to(step * 13.0);
    for (const LinkState& link : state.links()) {
      CHECK(state.actual_bandwidth(link.u, link.v) == link.history.newest().b);
    }
  }
}

TEST_CASE("drift mode ramps linearly toward the next change value") {
  NetworkState state = init_links(generate_topology(10, 30, 30, 18, 11),
                                  {1, 9, 50, DriftMode::LinearDrift}, 12);
  const LinkState first = state.links().front();
  const double mid = first.next_change_at / 2.0;
  state.advance_to(mid);
  const double expected =
      first.value + (first.next_value - first.value) * (mid - 0.0) / first.next_change_at;
  CHECK(state.actual_bandwidth(first.u, first.v) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("a forced change is visible at its own instant") {
  const Topology topo = make_topology(10, 10, 10, {{0, 0}, {5, 0}});
  NetworkState state = init_links(topo, static_config(), 3);
  state.force_change(0, 1, 5.0, 4.25);
  CHECK(state.clock() == 5.0);
  CHECK(state.actual_bandwidth(0, 1) == 4.25);
  CHECK(state.history(0, 1).newest() == BandwidthSample{5.0, 4.25});

  // scripted trace continues monotonically
  state.force_change(0, 1, 6.0, 1.5);
  CHECK(state.actual_bandwidth(0, 1) == 1.5);
  REQUIRE(state.history(0, 1).size() == 3);

  CHECK_THROWS_AS(state.force_change(0, 1, 5.5, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(state.force_change(0, 1, 7.0, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(state.force_change(1, 0, 6.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(state.actual_bandwidth(0, 5), std::out_of_range);
}

TEST_CASE("force_change rejects links that do not exist") {
  const Topology topo = make_topology(100, 100, 10, {{0, 0}, {5, 0}, {90, 90}});
  NetworkState state = init_links(topo, static_config(), 3);
  CHECK_THROWS_AS(state.force_change(0, 2, 1.0, 2.0), std::out_of_range);
  CHECK_THROWS_AS(state.history(0, 2), std::out_of_range);
}
