#include "meshfwd/topology.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "meshfwd/rng.hpp"

namespace meshfwd {

namespace {

bool within_radius(const Point& a, const Point& b, double radius) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy <= radius * radius;
}

void check_params(std::size_t n, double area_w, double area_h, double radius) {
  if (n < 2) {
    throw std::invalid_argument("topology: at least 2 nodes required");
  }
  if (!(area_w > 0.0) || !(area_h > 0.0)) {
    throw std::invalid_argument("topology: area dimensions must be positive");
  }
  if (!(radius > 0.0)) {
    throw std::invalid_argument("topology: radio_radius must be positive");
  }
}

}  // namespace

bool Topology::has_link(NodeId u, NodeId v) const {
  if (u >= size() || v >= size() || u == v) {
    return false;
  }
  const auto& adj = adjacency[u];
  return std::binary_search(adj.begin(), adj.end(), v);
}

Topology make_topology(double area_w, double area_h, double radio_radius,
                       std::vector<Point> positions) {
  check_params(positions.size(), area_w, area_h, radio_radius);
  for (const Point& p : positions) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("topology: non-finite node position");
    }
    if (p.x < 0.0 || p.x > area_w || p.y < 0.0 || p.y > area_h) {
      throw std::invalid_argument("topology: node position outside the area");
    }
  }

  Topology topo;
  topo.area_w = area_w;
  topo.area_h = area_h;
  topo.radio_radius = radio_radius;
  topo.positions = std::move(positions);
  const std::size_t n = topo.positions.size();
  topo.adjacency.assign(n, {});
  for (NodeId i = 0; i + 1 < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (within_radius(topo.positions[i], topo.positions[j], radio_radius)) {
        topo.adjacency[i].push_back(j);
        topo.adjacency[j].push_back(i);
      }
    }
  }
  return topo;
}

Topology generate_topology(std::size_t n, double area_w, double area_h,
                           double radio_radius, std::uint64_t seed) {
  check_params(n, area_w, area_h, radio_radius);
  Rng rng(seed);
  std::vector<Point> positions;
  positions.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.uniform(0.0, area_w);
    const double y = rng.uniform(0.0, area_h);
    positions.push_back({x, y});
  }
  return make_topology(area_w, area_h, radio_radius, std::move(positions));
}

const std::vector<NodeId>& neighbors(const Topology& topo, NodeId u) {
  if (u >= topo.size()) {
    throw std::out_of_range("neighbors: unknown node id");
  }
  return topo.adjacency[u];
}

void save_topology(const Topology& topo, std::ostream& out) {
  nlohmann::json doc;
  doc["area"] = {topo.area_w, topo.area_h};
  doc["radio_radius"] = topo.radio_radius;
  auto& nodes = doc["nodes"] = nlohmann::json::array();
  for (NodeId id = 0; id < topo.size(); ++id) {
    nodes.push_back({id, topo.positions[id].x, topo.positions[id].y});
  }
  out << doc.dump(2) << '\n';
  if (!out) {
    throw std::runtime_error("save_topology: write failed");
  }
}

void save_topology_file(const Topology& topo, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("save_topology: cannot open " + path);
  }
  save_topology(topo, out);
}

Topology load_topology(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("load_topology: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("area") || !doc.contains("radio_radius") ||
      !doc.contains("nodes")) {
    throw std::runtime_error("load_topology: expected area, radio_radius and nodes");
  }
  const auto& area = doc["area"];
  if (!area.is_array() || area.size() != 2) {
    throw std::runtime_error("load_topology: area must be [w, h]");
  }
  const double area_w = area[0].get<double>();
  const double area_h = area[1].get<double>();
  const double radius = doc["radio_radius"].get<double>();

  const auto& nodes = doc["nodes"];
  if (!nodes.is_array()) {
    throw std::runtime_error("load_topology: nodes must be an array");
  }
  std::vector<Point> positions(nodes.size());
  std::vector<bool> seen(nodes.size(), false);
  for (const auto& entry : nodes) {
    if (!entry.is_array() || entry.size() != 3) {
      throw std::runtime_error("load_topology: node entries must be [id, x, y]");
    }
    const auto id = entry[0].get<std::int64_t>();
    if (id < 0 || static_cast<std::size_t>(id) >= nodes.size()) {
      throw std::runtime_error("load_topology: node ids must be dense 0..n-1");
    }
    if (seen[static_cast<std::size_t>(id)]) {
      throw std::runtime_error("load_topology: duplicate node id");
    }
    seen[static_cast<std::size_t>(id)] = true;
    positions[static_cast<std::size_t>(id)] = {entry[1].get<double>(),
                                               entry[2].get<double>()};
  }
  try {
    return make_topology(area_w, area_h, radius, std::move(positions));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("load_topology: ") + e.what());
  }
}

Topology load_topology_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_topology: cannot open " + path);
  }
  return load_topology(in);
}

}  // namespace meshfwd
