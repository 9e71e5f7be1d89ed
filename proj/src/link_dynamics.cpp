#include "meshfwd/link_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace meshfwd {

namespace {

// Mean dwell counts for a drifting link to cross the full [b_min, b_max]
// range, and the per-link jitter applied to that rate. Together they keep
// trends persistent across several recorded changes.
constexpr double kDwellsToCrossRange = 6.0;
constexpr double kVelocityJitterLo = 0.5;
constexpr double kVelocityJitterHi = 1.5;

std::uint64_t link_key(NodeId u, NodeId v) {
  if (u > v) {
    std::swap(u, v);
  }
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

void check_sample(const BandwidthSample& s) {
  if (!std::isfinite(s.t) || s.t < 0.0) {
    throw std::invalid_argument("bandwidth sample: time must be finite and non-negative");
  }
  if (!std::isfinite(s.b) || s.b < 0.0) {
    throw std::invalid_argument("bandwidth sample: bandwidth must be finite and non-negative");
  }
}

}  // namespace

History3::History3(const std::vector<BandwidthSample>& samples) {
  for (const BandwidthSample& s : samples) {
    append(s);
  }
}

void History3::append(BandwidthSample sample) {
  check_sample(sample);
  if (size_ > 0 && sample.t <= newest().t) {
    throw std::invalid_argument("history: sample times must strictly increase");
  }
  if (size_ == kCapacity) {
    samples_[0] = samples_[1];
    samples_[1] = samples_[2];
    samples_[2] = sample;
  } else {
    samples_[size_++] = sample;
  }
}

const BandwidthSample& History3::newest() const {
  if (size_ == 0) {
    throw std::invalid_argument("history: empty");
  }
  return samples_[size_ - 1];
}

void validate(const LinkProcessConfig& config) {
  if (!std::isfinite(config.b_min) || !std::isfinite(config.b_max) ||
      config.b_min < 0.0 || !(config.b_min < config.b_max)) {
    throw std::invalid_argument("link config: requires 0 <= b_min < b_max");
  }
  if (!std::isfinite(config.mean_dwell) || !(config.mean_dwell > 0.0)) {
    throw std::invalid_argument("link config: mean_dwell must be positive");
  }
}

NetworkState::NetworkState(Topology topo, const LinkProcessConfig& config,
                           std::uint64_t seed)
    : topo_(std::move(topo)), config_(config), rng_(seed) {}

NetworkState init_links(Topology topo, const LinkProcessConfig& config,
                        std::uint64_t seed) {
  validate(config);
  NetworkState state(std::move(topo), config, seed);
  const Topology& t = state.topo_;
  const double base_velocity =
      (config.b_max - config.b_min) / (kDwellsToCrossRange * config.mean_dwell);

  for (NodeId u = 0; u < t.size(); ++u) {
    for (NodeId v : t.adjacency[u]) {
      if (v <= u) {
        continue;
      }
      const auto idx = static_cast<std::uint32_t>(state.links_.size());
      state.index_.emplace(link_key(u, v), idx);
      LinkState& link = state.links_.emplace_back();
      link.u = u;
      link.v = v;
      link.value = state.rng_.uniform(config.b_min, config.b_max);
      link.history.append({0.0, link.value});
      if (config.mode == DriftMode::LinearDrift) {
        const double sign = state.rng_.coin_flip() ? 1.0 : -1.0;
        link.velocity = sign * base_velocity *
                        state.rng_.uniform(kVelocityJitterLo, kVelocityJitterHi);
      }
      state.schedule_next(idx, 0.0);
    }
  }
  return state;
}

std::size_t NetworkState::index_of(NodeId u, NodeId v) const {
  const auto it = index_.find(link_key(u, v));
  if (it == index_.end()) {
    throw std::out_of_range("network: no such link");
  }
  return it->second;
}

void NetworkState::schedule_next(std::uint32_t link, double now) {
  LinkState& ls = links_[link];
  const double dwell = rng_.exponential(config_.mean_dwell);
  if (config_.mode == DriftMode::ResampleUniform) {
    ls.next_change_at = now + dwell;
    ls.next_value = rng_.uniform(config_.b_min, config_.b_max);
  } else {
    // Ramps reflect off the bounds, and hitting a bound is itself a change
    // event, so the trajectory between consecutive recorded samples is
    // always a straight line.
    if (ls.value >= config_.b_max) {
      ls.velocity = -std::abs(ls.velocity);
    } else if (ls.value <= config_.b_min) {
      ls.velocity = std::abs(ls.velocity);
    }
    const double bound = ls.velocity >= 0.0 ? config_.b_max : config_.b_min;
    const double to_bound =
        ls.velocity == 0.0 ? std::numeric_limits<double>::infinity()
                           : (bound - ls.value) / ls.velocity;
    if (to_bound <= dwell) {
      ls.next_change_at = now + to_bound;
      ls.next_value = bound;
    } else {
      ls.next_change_at = now + dwell;
      ls.next_value = ls.value + ls.velocity * dwell;
    }
  }
  events_.push_back({ls.next_change_at, link});
  std::push_heap(events_.begin(), events_.end(), [](const Event& a, const Event& b) {
    return a.time > b.time || (a.time == b.time && a.link > b.link);
  });
}

void NetworkState::advance_to(double t) {
  if (!std::isfinite(t)) {
    throw std::invalid_argument("advance_to: time must be finite");
  }
  if (t < clock_) {
    throw std::invalid_argument("advance_to: time regression");
  }
  const auto later = [](const Event& a, const Event& b) {
    return a.time > b.time || (a.time == b.time && a.link > b.link);
  };
  while (!events_.empty() && events_.front().time <= t) {
    std::pop_heap(events_.begin(), events_.end(), later);
    const Event ev = events_.back();
    events_.pop_back();
    LinkState& ls = links_[ev.link];
    ls.value = ls.next_value;
    ls.last_change_at = ev.time;
    ls.history.append({ev.time, ls.value});
    schedule_next(ev.link, ev.time);
  }
  clock_ = t;
}

double NetworkState::actual_bandwidth(NodeId u, NodeId v) const {
  const LinkState& ls = links_[index_of(u, v)];
  if (config_.mode == DriftMode::LinearDrift && clock_ > ls.last_change_at) {
    const double span = ls.next_change_at - ls.last_change_at;
    const double frac = (clock_ - ls.last_change_at) / span;
    return ls.value + (ls.next_value - ls.value) * frac;
  }
  return ls.value;
}

const History3& NetworkState::history(NodeId u, NodeId v) const {
  return links_[index_of(u, v)].history;
}

const LinkState& NetworkState::link(NodeId u, NodeId v) const {
  return links_[index_of(u, v)];
}

double NetworkState::transmit(NodeId u, NodeId v, double payload) {
  if (!std::isfinite(payload) || !(payload > 0.0)) {
    throw std::invalid_argument("transmit: payload must be positive and finite");
  }
  const std::size_t idx = index_of(u, v);
  const double start = clock_;
  double remaining = payload;
  while (true) {
    const LinkState& ls = links_[idx];
    const double span = ls.next_change_at - clock_;
    const double bw_now = actual_bandwidth(u, v);
    const double bw_end =
        config_.mode == DriftMode::LinearDrift ? ls.next_value : ls.value;
    const double capacity = 0.5 * (bw_now + bw_end) * span;
    if (capacity >= remaining) {
      const double slope = span > 0.0 ? (bw_end - bw_now) / span : 0.0;
      // ramp integral: 0.5*slope*dt^2 + bw_now*dt = remaining, stable form
      const double root = std::sqrt(bw_now * bw_now + 2.0 * slope * remaining);
      const double dt = 2.0 * remaining / (bw_now + root);
      advance_to(clock_ + dt);
      return clock_ - start;
    }
    remaining -= capacity;
    advance_to(ls.next_change_at);  // realizes the link's next segment
  }
}

void NetworkState::force_change(NodeId u, NodeId v, double t, double b) {
  if (!std::isfinite(b) || b < 0.0) {
    throw std::invalid_argument("force_change: bandwidth must be finite and non-negative");
  }
  const std::size_t idx = index_of(u, v);
  advance_to(t);  // validates t against the clock and runs due changes first
  LinkState& ls = links_[idx];
  ls.history.append({t, b});
  ls.value = b;
  ls.next_value = b;  // holds flat until the next scheduled change
  ls.last_change_at = t;
}

}  // namespace meshfwd
