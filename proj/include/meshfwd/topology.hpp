#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "meshfwd/geometry.hpp"

namespace meshfwd {

using NodeId = std::uint32_t;

// Static node layout with unit-disk adjacency: two nodes share a link iff
// their Euclidean distance is at most radio_radius.
struct Topology {
  double area_w = 0.0;
  double area_h = 0.0;
  double radio_radius = 0.0;
  std::vector<Point> positions;                // indexed by NodeId
  std::vector<std::vector<NodeId>> adjacency;  // sorted ascending per node

  std::size_t size() const { return positions.size(); }
  bool has_link(NodeId u, NodeId v) const;

  bool operator==(const Topology&) const = default;
};

// Builds a topology (and its adjacency) from explicit positions.
Topology make_topology(double area_w, double area_h, double radio_radius,
                       std::vector<Point> positions);

// Places n nodes independently and uniformly at random in the area.
// Equal arguments produce identical topologies.
Topology generate_topology(std::size_t n, double area_w, double area_h,
                           double radio_radius, std::uint64_t seed);

// Nodes within radio_radius of u, ascending, excluding u itself.
const std::vector<NodeId>& neighbors(const Topology& topo, NodeId u);

// Textual format: {"area": [w, h], "radio_radius": r, "nodes": [[id, x, y], ...]}.
// The loader rejects duplicate or non-dense ids and out-of-area points.
void save_topology(const Topology& topo, std::ostream& out);
void save_topology_file(const Topology& topo, const std::string& path);
Topology load_topology(std::istream& in);
Topology load_topology_file(const std::string& path);

}  // namespace meshfwd
