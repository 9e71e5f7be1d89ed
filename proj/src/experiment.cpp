#include "meshfwd/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace meshfwd {

namespace {

std::string fmt6(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

std::string opt_fmt6(const std::optional<double>& value) {
  return value ? fmt6(*value) : std::string();
}

std::string opt_json(const std::optional<double>& value) {
  return value ? fmt6(*value) : std::string("null");
}

void check_stream(std::ostream& out, const char* what) {
  if (!out) {
    throw std::runtime_error(std::string(what) + ": write failed");
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

// Connected components over the unit-disk adjacency, labels in discovery order.
std::vector<int> components(const Topology& topo, std::vector<std::size_t>& sizes) {
  std::vector<int> comp(topo.size(), -1);
  int label = 0;
  for (NodeId start = 0; start < topo.size(); ++start) {
    if (comp[start] != -1) {
      continue;
    }
    std::size_t count = 0;
    std::deque<NodeId> queue{start};
    comp[start] = label;
    while (!queue.empty()) {
      const NodeId u = queue.front();
      queue.pop_front();
      ++count;
      for (NodeId w : topo.adjacency[u]) {
        if (comp[w] == -1) {
          comp[w] = label;
          queue.push_back(w);
        }
      }
    }
    sizes.push_back(count);
    ++label;
  }
  return comp;
}

int router_order(RouterKind kind) { return static_cast<int>(kind); }

}  // namespace

void validate(const ExperimentConfig& config) {
  if (config.node_counts.empty() ||
      !std::is_sorted(config.node_counts.begin(), config.node_counts.end())) {
    throw std::invalid_argument("experiment config: node_counts must be non-empty ascending");
  }
  for (int n : config.node_counts) {
    if (n < 2) {
      throw std::invalid_argument("experiment config: node counts must be at least 2");
    }
  }
  if (config.repetitions < 1) {
    throw std::invalid_argument("experiment config: repetitions must be at least 1");
  }
  if (!(config.payload > 0.0)) {
    throw std::invalid_argument("experiment config: payload must be positive");
  }
  if (config.warmup < 0.0) {
    throw std::invalid_argument("experiment config: warmup must be non-negative");
  }
  if (config.routers.empty()) {
    throw std::invalid_argument("experiment config: at least one router required");
  }
  validate(config.link);
}

std::uint64_t trial_seed(std::uint64_t base_seed, int n, int rep) {
  return seed_combine(seed_combine(base_seed, static_cast<std::uint64_t>(n)),
                      static_cast<std::uint64_t>(rep));
}

std::pair<NodeId, NodeId> farthest_connected_pair(const Topology& topo) {
  if (topo.size() < 2) {
    throw std::invalid_argument("farthest_connected_pair: need at least 2 nodes");
  }
  std::vector<std::size_t> sizes;
  const std::vector<int> comp = components(topo, sizes);
  const int largest = static_cast<int>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  // Farthest pair inside the largest component; falls back to the global
  // farthest pair when no component holds two nodes.
  const bool constrain = sizes[static_cast<std::size_t>(largest)] >= 2;
  std::pair<NodeId, NodeId> best{0, 1};
  double best_dist = -1.0;
  for (NodeId u = 0; u + 1 < topo.size(); ++u) {
    if (constrain && comp[u] != largest) {
      continue;
    }
    for (NodeId v = u + 1; v < topo.size(); ++v) {
      if (constrain && comp[v] != largest) {
        continue;
      }
      const double dx = topo.positions[u].x - topo.positions[v].x;
      const double dy = topo.positions[u].y - topo.positions[v].y;
      const double dist = dx * dx + dy * dy;
      if (dist > best_dist) {
        best_dist = dist;
        best = {u, v};
      }
    }
  }
  return best;
}

TrialSetup prepare_trial(const ExperimentConfig& config, int n, int rep) {
  const std::uint64_t seed = trial_seed(config.base_seed, n, rep);
  Topology topo = generate_topology(static_cast<std::size_t>(n), config.area_w,
                                    config.area_h, config.radio_radius,
                                    seed_combine(seed, 1));
  const auto [s, d] = farthest_connected_pair(topo);
  NetworkState state = init_links(std::move(topo), config.link, seed_combine(seed, 2));
  state.advance_to(config.warmup);
  return TrialSetup{std::move(state), s, d};
}

std::vector<TrialMetrics> run_trial(const ExperimentConfig& config, int n, int rep) {
  const TrialSetup setup = prepare_trial(config, n, rep);
  std::vector<TrialMetrics> rows;
  rows.reserve(config.routers.size());
  for (RouterKind kind : config.routers) {
    NetworkState state = setup.state;  // every router faces the same conditions
    const RouteResult res =
        route(state, setup.source, setup.destination, kind, config.payload);
    TrialMetrics row;
    row.router = kind;
    row.n = n;
    row.rep = rep;
    row.outcome = res.outcome;
    row.hops = static_cast<int>(res.hops.size());
    if (res.outcome == RouteOutcome::Delivered) {
      row.delay = res.total_delay();
      row.speed = config.payload / *row.delay;
    }
    rows.push_back(row);
  }
  return rows;
}

ExperimentTable run_sweep(const ExperimentConfig& config) {
  validate(config);
  ExperimentTable table;
  for (int n : config.node_counts) {
    for (int rep = 0; rep < config.repetitions; ++rep) {
      auto rows = run_trial(config, n, rep);
      table.rows.insert(table.rows.end(), rows.begin(), rows.end());
    }
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const TrialMetrics& a, const TrialMetrics& b) {
              return std::tuple(router_order(a.router), a.n, a.rep) <
                     std::tuple(router_order(b.router), b.n, b.rep);
            });
  table.aggregates = compute_aggregates(table.rows);
  return table;
}

std::vector<Aggregate> compute_aggregates(const std::vector<TrialMetrics>& rows) {
  std::map<std::pair<int, int>, std::vector<const TrialMetrics*>> groups;
  for (const TrialMetrics& row : rows) {
    groups[{router_order(row.router), row.n}].push_back(&row);
  }
  std::vector<Aggregate> aggregates;
  for (const auto& [key, group] : groups) {
    Aggregate agg;
    agg.router = group.front()->router;
    agg.n = key.second;
    double delay_sum = 0.0;
    double speed_sum = 0.0;
    std::size_t delivered = 0;
    for (const TrialMetrics* row : group) {
      if (row->outcome == RouteOutcome::Delivered) {
        ++delivered;
        delay_sum += *row->delay;
        speed_sum += *row->speed;
      }
    }
    if (delivered > 0) {
      agg.mean_delay = delay_sum / static_cast<double>(delivered);
      agg.mean_speed = speed_sum / static_cast<double>(delivered);
    }
    agg.delivery_ratio = static_cast<double>(delivered) / static_cast<double>(group.size());
    aggregates.push_back(agg);
  }
  return aggregates;
}

void write_rows(const ExperimentTable& table, TableFormat format, std::ostream& out) {
  if (format == TableFormat::Csv) {
    out << "router,n,rep,outcome,hops,delay_ms,speed_mb_per_ms\n";
    for (const TrialMetrics& row : table.rows) {
      out << to_string(row.router) << ',' << row.n << ',' << row.rep << ','
          << to_string(row.outcome) << ',' << row.hops << ','
          << opt_fmt6(row.delay) << ',' << opt_fmt6(row.speed) << '\n';
    }
  } else {
    for (const TrialMetrics& row : table.rows) {
      out << "{\"router\":\"" << to_string(row.router) << "\",\"n\":" << row.n
          << ",\"rep\":" << row.rep << ",\"outcome\":\"" << to_string(row.outcome)
          << "\",\"hops\":" << row.hops << ",\"delay_ms\":" << opt_json(row.delay)
          << ",\"speed_mb_per_ms\":" << opt_json(row.speed) << "}\n";
    }
  }
  check_stream(out, "write_rows");
}

void write_summary(const ExperimentTable& table, TableFormat format, std::ostream& out) {
  if (format == TableFormat::Csv) {
    out << "router,n,mean_delay_ms,mean_speed_mb_per_ms,delivery_ratio\n";
    for (const Aggregate& agg : table.aggregates) {
      out << to_string(agg.router) << ',' << agg.n << ',' << opt_fmt6(agg.mean_delay)
          << ',' << opt_fmt6(agg.mean_speed) << ',' << fmt6(agg.delivery_ratio)
          << '\n';
    }
  } else {
    for (const Aggregate& agg : table.aggregates) {
      out << "{\"router\":\"" << to_string(agg.router) << "\",\"n\":" << agg.n
          << ",\"mean_delay_ms\":" << opt_json(agg.mean_delay)
          << ",\"mean_speed_mb_per_ms\":" << opt_json(agg.mean_speed)
          << ",\"delivery_ratio\":" << fmt6(agg.delivery_ratio) << "}\n";
    }
  }
  check_stream(out, "write_summary");
}

std::vector<TrialMetrics> parse_rows_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      line != "router,n,rep,outcome,hops,delay_ms,speed_mb_per_ms") {
    throw std::runtime_error("parse_rows_csv: bad or missing header");
  }
  std::vector<TrialMetrics> rows;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != 7) {
      throw std::runtime_error("parse_rows_csv: expected 7 fields, got line: " + line);
    }
    TrialMetrics row;
    row.router = router_kind_from_string(fields[0]);
    row.n = std::stoi(fields[1]);
    row.rep = std::stoi(fields[2]);
    row.outcome = route_outcome_from_string(fields[3]);
    row.hops = std::stoi(fields[4]);
    if (!fields[5].empty()) {
      row.delay = std::stod(fields[5]);
    }
    if (!fields[6].empty()) {
      row.speed = std::stod(fields[6]);
    }
    rows.push_back(row);
  }
  return rows;
}

ExperimentConfig load_experiment_config(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("experiment config: ") + e.what());
  }
  if (!doc.is_object()) {
    throw std::runtime_error("experiment config: expected a JSON object");
  }
  ExperimentConfig config;
  for (const auto& [key, value] : doc.items()) {
    try {
      if (key == "node_counts") {
        config.node_counts = value.get<std::vector<int>>();
      } else if (key == "area") {
        if (!value.is_array() || value.size() != 2) {
          throw std::runtime_error("experiment config: area must be [w, h]");
        }
        config.area_w = value[0].get<double>();
        config.area_h = value[1].get<double>();
      } else if (key == "radio_radius") {
        config.radio_radius = value.get<double>();
      } else if (key == "repetitions") {
        config.repetitions = value.get<int>();
      } else if (key == "payload_mb") {
        config.payload = value.get<double>();
      } else if (key == "warmup_ms") {
        config.warmup = value.get<double>();
      } else if (key == "base_seed") {
        config.base_seed = value.get<std::uint64_t>();
      } else if (key == "routers") {
        config.routers.clear();
        for (const auto& token : value) {
          config.routers.push_back(router_kind_from_string(token.get<std::string>()));
        }
      } else if (key == "link") {
        for (const auto& [lk, lv] : value.items()) {
          if (lk == "b_min") {
            config.link.b_min = lv.get<double>();
          } else if (lk == "b_max") {
            config.link.b_max = lv.get<double>();
          } else if (lk == "mean_dwell_ms") {
            config.link.mean_dwell = lv.get<double>();
          } else if (lk == "drift_mode") {
            config.link.mode = drift_mode_from_string(lv.get<std::string>());
          } else {
            throw std::runtime_error("experiment config: unknown link field " + lk);
          }
        }
      } else {
        throw std::runtime_error("experiment config: unknown field " + key);
      }
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error("experiment config: bad value for " + key + ": " + e.what());
    }
  }
  validate(config);
  return config;
}

ExperimentConfig load_experiment_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("experiment config: cannot open " + path);
  }
  return load_experiment_config(in);
}

const char* to_string(RouterKind kind) {
  switch (kind) {
    case RouterKind::MlForwarding:
      return "ml-forwarding";
    case RouterKind::LastObservedGreedy:
      return "last-observed-greedy";
    case RouterKind::MinHop:
      return "min-hop";
  }
  throw std::invalid_argument("unknown router kind");
}

const char* to_string(RouteOutcome outcome) {
  switch (outcome) {
    case RouteOutcome::Delivered:
      return "Delivered";
    case RouteOutcome::NoRoute:
      return "NoRoute";
    case RouteOutcome::HopLimit:
      return "HopLimit";
  }
  throw std::invalid_argument("unknown route outcome");
}

const char* to_string(DriftMode mode) {
  switch (mode) {
    case DriftMode::ResampleUniform:
      return "resample-uniform";
    case DriftMode::LinearDrift:
      return "linear-drift";
  }
  throw std::invalid_argument("unknown drift mode");
}

RouterKind router_kind_from_string(const std::string& token) {
  if (token == "ml-forwarding") {
    return RouterKind::MlForwarding;
  }
  if (token == "last-observed-greedy") {
    return RouterKind::LastObservedGreedy;
  }
  if (token == "min-hop") {
    return RouterKind::MinHop;
  }
  throw std::invalid_argument("unknown router kind: " + token);
}

RouteOutcome route_outcome_from_string(const std::string& token) {
  if (token == "Delivered") {
    return RouteOutcome::Delivered;
  }
  if (token == "NoRoute") {
    return RouteOutcome::NoRoute;
  }
  if (token == "HopLimit") {
    return RouteOutcome::HopLimit;
  }
  throw std::invalid_argument("unknown route outcome: " + token);
}

DriftMode drift_mode_from_string(const std::string& token) {
  if (token == "resample-uniform") {
    return DriftMode::ResampleUniform;
  }
  if (token == "linear-drift") {
    return DriftMode::LinearDrift;
  }
  throw std::invalid_argument("unknown drift mode: " + token);
}

}  // namespace meshfwd
