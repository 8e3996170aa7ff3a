#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace netpoint {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double distance(Point2 a, Point2 b) noexcept {
  return std::hypot(b.x - a.x, b.y - a.y);
}

}  // namespace netpoint
