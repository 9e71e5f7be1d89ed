#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "meshfwd/rng.hpp"
#include "meshfwd/topology.hpp"

namespace meshfwd {

struct BandwidthSample {
  double t = 0.0;  // ms, simulation clock
  double b = 0.0;  // MB/ms

  bool operator==(const BandwidthSample&) const = default;
};

// The last three recorded bandwidth changes of a link, oldest first.
// Appending a fourth sample evicts the oldest; times strictly increase.
class History3 {
 public:
  static constexpr std::size_t kCapacity = 3;

  History3() = default;
  explicit History3(const std::vector<BandwidthSample>& samples);

  void append(BandwidthSample sample);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  const BandwidthSample& operator[](std::size_t i) const { return samples_[i]; }
  const BandwidthSample& newest() const;
  const BandwidthSample* begin() const { return samples_.data(); }
  const BandwidthSample* end() const { return samples_.data() + size_; }

  bool operator==(const History3&) const = default;

 private:
  std::array<BandwidthSample, kCapacity> samples_{};
  std::size_t size_ = 0;
};

enum class DriftMode {
  // Fresh uniform value at every change; constant in between.
  ResampleUniform,
  // Bandwidth ramps linearly between changes at a per-link rate, reversing
  // direction when it reaches a bound.
  LinearDrift,
};

struct LinkProcessConfig {
  double b_min = 1.0;       // MB/ms
  double b_max = 10.0;      // MB/ms
  double mean_dwell = 50.0; // ms between changes (exponential)
  DriftMode mode = DriftMode::LinearDrift;

  bool operator==(const LinkProcessConfig&) const = default;
};

// Throws std::invalid_argument unless 0 <= b_min < b_max and mean_dwell > 0.
void validate(const LinkProcessConfig& config);

struct LinkState {
  NodeId u = 0;  // endpoints, u < v
  NodeId v = 0;
  double value = 0.0;           // bandwidth recorded at the last change
  double last_change_at = 0.0;  // ms
  double next_change_at = 0.0;  // ms
  double next_value = 0.0;      // bandwidth the link reaches at the next change
  double velocity = 0.0;        // MB/ms per ms; LinearDrift only
  History3 history;

  bool operator==(const LinkState&) const = default;
};

// All time-varying link state of one topology plus the simulation clock.
// Single-owner: copy the whole state to branch a scenario.
class NetworkState {
 public:
  const Topology& topology() const { return topo_; }
  const LinkProcessConfig& config() const { return config_; }
  double clock() const { return clock_; }
  std::size_t link_count() const { return links_.size(); }

  // Runs every link change scheduled at or before t in global time order,
  // then sets the clock to t. Throws std::invalid_argument if t < clock().
  void advance_to(double t);

  // Instantaneous bandwidth of link (u, v) at the current clock.
  // Throws std::out_of_range when the link does not exist.
  double actual_bandwidth(NodeId u, NodeId v) const;

  const History3& history(NodeId u, NodeId v) const;
  const LinkState& link(NodeId u, NodeId v) const;
  const std::vector<LinkState>& links() const { return links_; }

  // Scripted change: advances the clock to t, then records bandwidth b on
  // link (u, v). The link then holds b until its next scheduled change.
  void force_change(NodeId u, NodeId v, double t, double b);

  // Pushes `payload` MB through link (u, v) starting at the current clock,
  // integrating the link's bandwidth as it evolves, and advances the clock
  // past the transmission. Returns the transmission time in ms.
  double transmit(NodeId u, NodeId v, double payload);

  bool operator==(const NetworkState&) const = default;

 private:
  friend NetworkState init_links(Topology topo, const LinkProcessConfig& config,
                                 std::uint64_t seed);

  struct Event {
    double time = 0.0;
    std::uint32_t link = 0;
    bool operator==(const Event&) const = default;
  };

  NetworkState(Topology topo, const LinkProcessConfig& config, std::uint64_t seed);

  std::size_t index_of(NodeId u, NodeId v) const;
  void schedule_next(std::uint32_t link, double now);

  Topology topo_;
  LinkProcessConfig config_;
  std::vector<LinkState> links_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  std::vector<Event> events_;  // min-heap on (time, link)
  double clock_ = 0.0;
  Rng rng_;
};

// Gives every link an initial uniform bandwidth, one history sample at t=0,
// and a first scheduled change. The clock starts at 0.
NetworkState init_links(Topology topo, const LinkProcessConfig& config,
                        std::uint64_t seed);

}  // namespace meshfwd
