#include "meshfwd/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace meshfwd {

namespace {
constexpr double kAngleSlack = 1e-12;  // rad, absorbs rounding on the boundary rays
}

ForwardingRegion forwarding_region(Point s, Point d) {
  if (s == d) {
    throw std::invalid_argument("forwarding_region: source and destination coincide");
  }
  const double dx = d.x - s.x;
  const double dy = d.y - s.y;
  const double len = std::hypot(dx, dy);
  return ForwardingRegion{s, dx / len, dy / len};
}

bool in_region(const ForwardingRegion& region, Point p) {
  const double dx = p.x - region.apex.x;
  const double dy = p.y - region.apex.y;
  if (dx == 0.0 && dy == 0.0) {
    return false;
  }
  const double dot = region.dir_x * dx + region.dir_y * dy;
  const double cross = region.dir_x * dy - region.dir_y * dx;
  // atan2 keeps the test well conditioned for near-axis and near-boundary points.
  const double angle = std::atan2(std::fabs(cross), dot);
  return angle <= region.half_angle + kAngleSlack;
}

}  // namespace meshfwd
