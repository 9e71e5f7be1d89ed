#pragma once

#include <optional>
#include <unordered_set>
#include <vector>

#include "meshfwd/link_dynamics.hpp"
#include "meshfwd/predictor.hpp"

namespace meshfwd {

enum class RouterKind {
  MlForwarding,        // greedy on extrapolated bandwidth
  LastObservedGreedy,  // greedy on the newest recorded sample
  MinHop,              // breadth-first shortest path
};

enum class Scorer { Predicted, LastObserved };

enum class RouteOutcome { Delivered, NoRoute, HopLimit };

struct HopRecord {
  NodeId from = 0;
  NodeId to = 0;
  double decided_at = 0.0;   // ms
  double predicted_bw = 0.0; // the score the router acted on
  double actual_bw = 0.0;    // ground truth at the decision instant
  double hop_delay = 0.0;    // payload / actual_bw

  bool operator==(const HopRecord&) const = default;
};

struct RouteResult {
  NodeId source = 0;
  NodeId destination = 0;
  std::vector<HopRecord> hops;
  RouteOutcome outcome = RouteOutcome::NoRoute;

  double total_delay() const;
};

// One scored neighbor at a forwarding decision; kept for tracing.
struct CandidateScore {
  NodeId node = 0;
  bool in_region = false;
  bool visited = false;
  double last_observed = 0.0;
  double predicted = 0.0;
  double actual = 0.0;
  Coefficients coeffs;
};

struct Decision {
  NodeId at = 0;
  double clock = 0.0;
  bool direct_delivery = false;
  std::optional<NodeId> chosen;          // empty when no candidate qualified
  std::vector<CandidateScore> candidates;  // every neighbor of `at`
};

using DecisionTrace = std::vector<Decision>;

struct RouteOptions {
  bool recompute_region = false;        // rebuild the cone at every relay
  std::optional<std::size_t> hop_limit; // defaults to the node count
};

// Highest-scoring unvisited in-region neighbor of current; ties go to the
// smallest id. Empty when no neighbor qualifies.
std::optional<NodeId> select_next_hop(const NetworkState& state, NodeId current,
                                      const ForwardingRegion& region,
                                      const std::unordered_set<NodeId>& visited,
                                      Scorer scorer);

// Forwards hop by hop from s to d, advancing the clock by each hop's
// transmission time so the link processes evolve mid-route. Greedy kinds
// compute the forwarding cone once at the source (see RouteOptions) and
// deliver directly whenever d is adjacent; MinHop follows a breadth-first
// shortest path. Throws on s == d, unknown ids, or non-positive payload.
RouteResult route(NetworkState& state, NodeId s, NodeId d, RouterKind kind,
                  double payload, const RouteOptions& options = {},
                  DecisionTrace* trace = nullptr);

}  // namespace meshfwd
