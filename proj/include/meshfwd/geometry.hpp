#pragma once

#include <numbers>

namespace meshfwd {

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

// 90-degree cone with its apex at the sender, bisected by the ray toward the
// destination. A candidate next hop is considered only if it falls inside.
struct ForwardingRegion {
  Point apex;
  double dir_x = 1.0;  // unit vector toward the destination
  double dir_y = 0.0;
  double half_angle = std::numbers::pi / 4.0;
};

// Region for forwarding from s toward d.
// Throws std::invalid_argument when s and d coincide.
ForwardingRegion forwarding_region(Point s, Point d);

// True iff the angle between (p - apex) and the region axis is at most the
// half angle. The boundary rays count as inside (1e-12 rad slack); the apex
// itself does not.
bool in_region(const ForwardingRegion& region, Point p);

}  // namespace meshfwd
