#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <doctest.h>

#include "meshfwd/rng.hpp"
#include "meshfwd/topology.hpp"

using namespace meshfwd;

namespace {

double dist(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace

TEST_CASE("two nodes within radius form exactly one link") {
  // radius 100 exceeds the 14.14 m diagonal of a 10x10 area
  const Topology topo = generate_topology(2, 10, 10, 100, 1);
  REQUIRE(topo.size() == 2);
  CHECK(neighbors(topo, 0) == std::vector<NodeId>{1});
  CHECK(neighbors(topo, 1) == std::vector<NodeId>{0});
  CHECK(topo.has_link(0, 1));
}

TEST_CASE("generated topologies stay within bounds and obey the radius") {
  const Topology topo = generate_topology(100, 100, 100, 15, 7);
  REQUIRE(topo.size() == 100);
  for (const Point& p : topo.positions) {
    CHECK(p.x >= 0.0);
    CHECK(p.x <= 100.0);
    CHECK(p.y >= 0.0);
    CHECK(p.y <= 100.0);
  }
  for (NodeId u = 0; u < topo.size(); ++u) {
    for (NodeId v : neighbors(topo, u)) {
      CHECK(dist(topo.positions[u], topo.positions[v]) <= 15.0);
      const auto& back = neighbors(topo, v);
      CHECK(std::binary_search(back.begin(), back.end(), u));
    }
  }
}

TEST_CASE("adjacency matches a pairwise distance scan") {
  const Topology topo = generate_topology(50, 100, 100, 20, 11);
  for (NodeId u = 0; u < topo.size(); ++u) {
    std::vector<NodeId> expected;
    for (NodeId v = 0; v < topo.size(); ++v) {
      if (v != u && dist(topo.positions[u], topo.positions[v]) <= 20.0) {
        expected.push_back(v);
      }
    }
    CHECK(neighbors(topo, u) == expected);
  }
}

TEST_CASE("equal seeds give identical topologies") {
  const Topology a = generate_topology(60, 100, 100, 15, 7);
  const Topology b = generate_topology(60, 100, 100, 15, 7);
  CHECK(a == b);
  const Topology c = generate_topology(60, 100, 100, 15, 8);
  CHECK(a != c);

  std::ostringstream sa, sb;
  save_topology(a, sa);
  save_topology(b, sb);
  CHECK(sa.str() == sb.str());
}

TEST_CASE("generation rejects invalid parameters") {
  CHECK_THROWS_AS(generate_topology(1, 100, 100, 15, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_topology(10, 0, 100, 15, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_topology(10, 100, -5, 15, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_topology(10, 100, 100, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(neighbors(generate_topology(5, 10, 10, 1, 1), 9), std::out_of_range);
}

TEST_CASE("an out-of-range node has no neighbors") {
  // nodes pinned to opposite corners, radius far too small
  const Topology topo = make_topology(100, 100, 1, {{0, 0}, {100, 100}, {0, 100}});
  CHECK(neighbors(topo, 0).empty());
  CHECK(neighbors(topo, 1).empty());
}

TEST_CASE("topology files round-trip") {
  const Topology topo = generate_topology(25, 80, 60, 18, 42);
  std::stringstream buf;
  save_topology(topo, buf);
  const Topology loaded = load_topology(buf);
  CHECK(loaded == topo);
}

TEST_CASE("the loader rejects malformed documents") {
  const auto load_str = [](const std::string& text) {
    std::istringstream in(text);
    return load_topology(in);
  };
  // duplicate id
  CHECK_THROWS_AS(load_str(R"({"area":[10,10],"radio_radius":5,
      "nodes":[[0,1,1],[0,2,2]]})"),
                  std::runtime_error);
  // non-dense ids
  CHECK_THROWS_AS(load_str(R"({"area":[10,10],"radio_radius":5,
      "nodes":[[0,1,1],[2,2,2]]})"),
                  std::runtime_error);
  // out-of-area point
  CHECK_THROWS_AS(load_str(R"({"area":[10,10],"radio_radius":5,
      "nodes":[[0,1,1],[1,11,2]]})"),
                  std::runtime_error);
  // non-positive radius
  CHECK_THROWS_AS(load_str(R"({"area":[10,10],"radio_radius":0,
      "nodes":[[0,1,1],[1,2,2]]})"),
                  std::runtime_error);
  // missing fields
  CHECK_THROWS_AS(load_str(R"({"radio_radius":5,"nodes":[[0,1,1],[1,2,2]]})"),
                  std::runtime_error);
  CHECK_THROWS_AS(load_str("not json"), std::runtime_error);
}
