#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "meshfwd/forwarding.hpp"

namespace meshfwd {

struct ExperimentConfig {
  std::vector<int> node_counts = {100, 125, 150, 175, 200, 225, 250, 275, 300};
  double area_w = 100.0;       // meters
  double area_h = 100.0;       // meters
  double radio_radius = 15.0;  // meters
  int repetitions = 10;
  double payload = 200.0;      // MB
  LinkProcessConfig link;
  double warmup = 2500.0;      // ms advanced before routing so histories fill
  std::uint64_t base_seed = 42;
  std::vector<RouterKind> routers = {RouterKind::MlForwarding,
                                     RouterKind::LastObservedGreedy,
                                     RouterKind::MinHop};
};

void validate(const ExperimentConfig& config);

struct TrialMetrics {
  RouterKind router = RouterKind::MlForwarding;
  int n = 0;
  int rep = 0;
  RouteOutcome outcome = RouteOutcome::NoRoute;
  int hops = 0;
  std::optional<double> delay;  // ms; Delivered rows only
  std::optional<double> speed;  // MB/ms; payload / delay

  bool operator==(const TrialMetrics&) const = default;
};

struct Aggregate {
  RouterKind router = RouterKind::MlForwarding;
  int n = 0;
  std::optional<double> mean_delay;  // over Delivered rows
  std::optional<double> mean_speed;
  double delivery_ratio = 0.0;

  bool operator==(const Aggregate&) const = default;
};

struct ExperimentTable {
  std::vector<TrialMetrics> rows;        // sorted by (router, n, rep)
  std::vector<Aggregate> aggregates;     // sorted by (router, n)
};

// Stable derivation so adding node counts never perturbs other trials.
std::uint64_t trial_seed(std::uint64_t base_seed, int n, int rep);

// Euclidean-farthest pair of nodes that can reach each other; when the graph
// is disconnected, the farthest pair within the largest component.
std::pair<NodeId, NodeId> farthest_connected_pair(const Topology& topo);

// Seeded topology + links advanced through warmup, with the endpoints every
// router of this trial will route between.
struct TrialSetup {
  NetworkState state;
  NodeId source = 0;
  NodeId destination = 0;
};
TrialSetup prepare_trial(const ExperimentConfig& config, int n, int rep);

// One row per configured router; all routers start from clones of the same
// post-warmup state.
std::vector<TrialMetrics> run_trial(const ExperimentConfig& config, int n, int rep);

ExperimentTable run_sweep(const ExperimentConfig& config);

// Groups rows by (router, n); means over Delivered rows only.
std::vector<Aggregate> compute_aggregates(const std::vector<TrialMetrics>& rows);

enum class TableFormat { Csv, JsonLines };

// Header: router,n,rep,outcome,hops,delay_ms,speed_mb_per_ms
// Failed rows leave delay/speed empty. Numbers carry 6 significant digits.
void write_rows(const ExperimentTable& table, TableFormat format, std::ostream& out);
// Header: router,n,mean_delay_ms,mean_speed_mb_per_ms,delivery_ratio
void write_summary(const ExperimentTable& table, TableFormat format, std::ostream& out);

std::vector<TrialMetrics> parse_rows_csv(std::istream& in);

// JSON document mirroring ExperimentConfig; absent fields keep defaults,
// unknown fields are rejected.
ExperimentConfig load_experiment_config(std::istream& in);
ExperimentConfig load_experiment_config_file(const std::string& path);

const char* to_string(RouterKind kind);
const char* to_string(RouteOutcome outcome);
const char* to_string(DriftMode mode);
RouterKind router_kind_from_string(const std::string& token);
RouteOutcome route_outcome_from_string(const std::string& token);
DriftMode drift_mode_from_string(const std::string& token);

}  // namespace meshfwd
