#include "meshfwd/forwarding.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace meshfwd {

namespace {

double link_score(const NetworkState& state, NodeId u, NodeId v, Scorer scorer) {
  const History3& h = state.history(u, v);
  return scorer == Scorer::Predicted ? predict_bandwidth(h, state.clock())
                                     : h.newest().b;
}

// Shortest path s..d by hop count; empty when unreachable. Sorted adjacency
// makes parent choice (and therefore the whole path) deterministic.
std::vector<NodeId> bfs_path(const Topology& topo, NodeId s, NodeId d) {
  const auto n = topo.size();
  constexpr NodeId kUnset = static_cast<NodeId>(-1);
  std::vector<NodeId> parent(n, kUnset);
  std::deque<NodeId> queue{s};
  parent[s] = s;
  while (!queue.empty() && parent[d] == kUnset) {
    const NodeId u = queue.front();
    queue.pop_front();
    for (NodeId w : topo.adjacency[u]) {
      if (parent[w] == kUnset) {
        parent[w] = u;
        queue.push_back(w);
      }
    }
  }
  if (parent[d] == kUnset) {
    return {};
  }
  std::vector<NodeId> path{d};
  for (NodeId cur = d; cur != s; cur = parent[cur]) {
    path.push_back(parent[cur]);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

Decision score_neighbors(const NetworkState& state, NodeId at,
                         const ForwardingRegion& region,
                         const std::unordered_set<NodeId>& visited) {
  Decision decision;
  decision.at = at;
  decision.clock = state.clock();
  for (NodeId w : neighbors(state.topology(), at)) {
    CandidateScore cs;
    cs.node = w;
    cs.in_region = in_region(region, state.topology().positions[w]);
    cs.visited = visited.contains(w);
    const History3& h = state.history(at, w);
    cs.last_observed = h.newest().b;
    cs.coeffs = divided_coefficients(h);
    cs.predicted = std::max(extrapolate(cs.coeffs, state.clock()), 0.0);
    cs.actual = state.actual_bandwidth(at, w);
    decision.candidates.push_back(cs);
  }
  return decision;
}

}  // namespace

double RouteResult::total_delay() const {
  double sum = 0.0;
  for (const HopRecord& hop : hops) {
    sum += hop.hop_delay;
  }
  return sum;
}

std::optional<NodeId> select_next_hop(const NetworkState& state, NodeId current,
                                      const ForwardingRegion& region,
                                      const std::unordered_set<NodeId>& visited,
                                      Scorer scorer) {
  std::optional<NodeId> best;
  double best_score = 0.0;
  for (NodeId w : neighbors(state.topology(), current)) {
    if (visited.contains(w)) {
      continue;
    }
    if (!in_region(region, state.topology().positions[w])) {
      continue;
    }
    const double score = link_score(state, current, w, scorer);
    if (!best || score > best_score) {  // ties keep the smallest id
      best = w;
      best_score = score;
    }
  }
  return best;
}

RouteResult route(NetworkState& state, NodeId s, NodeId d, RouterKind kind,
                  double payload, const RouteOptions& options,
                  DecisionTrace* trace) {
  const Topology& topo = state.topology();
  if (s >= topo.size() || d >= topo.size()) {
    throw std::out_of_range("route: unknown endpoint id");
  }
  if (s == d) {
    throw std::invalid_argument("route: source equals destination");
  }
  if (!(payload > 0.0)) {
    throw std::invalid_argument("route: payload must be positive");
  }
  const std::size_t hop_limit = options.hop_limit.value_or(topo.size());

  RouteResult result;
  result.source = s;
  result.destination = d;

  const auto take_hop = [&](NodeId from, NodeId to, double score) {
    const double now = state.clock();
    const double delay = state.transmit(from, to, payload);
    // the bandwidth the hop actually experienced, averaged over the transmission
    result.hops.push_back({from, to, now, score, payload / delay, delay});
  };

  if (kind == RouterKind::MinHop) {
    const std::vector<NodeId> path = bfs_path(topo, s, d);
    if (path.empty()) {
      result.outcome = RouteOutcome::NoRoute;
      return result;
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      const double score = state.history(path[i], path[i + 1]).newest().b;
      take_hop(path[i], path[i + 1], score);
    }
    result.outcome = RouteOutcome::Delivered;
    return result;
  }

  const Scorer scorer = kind == RouterKind::MlForwarding ? Scorer::Predicted
                                                         : Scorer::LastObserved;
  ForwardingRegion region = forwarding_region(topo.positions[s], topo.positions[d]);
  std::unordered_set<NodeId> visited;
  NodeId current = s;
  while (true) {
    if (result.hops.size() >= hop_limit) {
      result.outcome = RouteOutcome::HopLimit;
      return result;
    }
    visited.insert(current);
    if (options.recompute_region && current != s) {
      region = forwarding_region(topo.positions[current], topo.positions[d]);
    }

    const bool direct = topo.has_link(current, d);
    std::optional<NodeId> next =
        direct ? std::optional<NodeId>(d)
               : select_next_hop(state, current, region, visited, scorer);
    if (trace) {
      Decision decision = score_neighbors(state, current, region, visited);
      decision.direct_delivery = direct;
      decision.chosen = next;
      trace->push_back(std::move(decision));
    }
    if (!next) {
      result.outcome = RouteOutcome::NoRoute;
      return result;
    }
    take_hop(current, *next, link_score(state, current, *next, scorer));
    if (*next == d) {
      result.outcome = RouteOutcome::Delivered;
      return result;
    }
    current = *next;
  }
}

}  // namespace meshfwd
