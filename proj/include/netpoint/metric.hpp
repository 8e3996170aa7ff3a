#pragma once

#include <cstddef>
#include <vector>

#include "netpoint/graph.hpp"

namespace netpoint {

/// A location on the network: host edge plus offset from the tail, in edge
/// length units.
struct NetPoint {
  EdgeId edge = 0;
  double offset = 0.0;

  friend bool operator==(const NetPoint&, const NetPoint&) = default;
};

struct SubInterval {
  EdgeId edge = 0;
  double lo = 0.0;
  double hi = 0.0;
};

/// Disjoint, sorted (by edge then lo) sub-intervals of the network.
struct SubIntervalSet {
  std::vector<SubInterval> intervals;
  double measure = 0.0;
};

/// Throws InvalidNetPoint when the edge is unknown or the offset falls
/// outside [0, length].
void validate(const NetworkGraph& g, const NetPoint& p);

/// Planar coordinates of a network point (offset mapped proportionally onto
/// the edge polyline).
Point2 planar_position(const NetworkGraph& g, const NetPoint& p);

/// Shortest-path lengths from p to every vertex, all edges traversable both
/// ways. Unreachable vertices hold kInfinity.
std::vector<double> vertex_distances(const NetworkGraph& g, const NetPoint& p);

/// Distance from the source of `from_source` (the result of
/// vertex_distances(g, p)) to q.
double distance_to(const NetworkGraph& g, const NetPoint& p, const std::vector<double>& from_source,
                   const NetPoint& q);

/// Shortest-path distance along the network; kInfinity when disconnected.
double net_distance(const NetworkGraph& g, const NetPoint& p, const NetPoint& q);

/// Every network point within distance r of u.
SubIntervalSet disc(const NetworkGraph& g, const NetPoint& u, double r);

/// Number of network points lying at distance exactly r from u. A wavefront
/// reaching a vertex counts that vertex once.
std::size_t circumference(const NetworkGraph& g, const NetPoint& u, double r);

/// circumference() with precomputed vertex_distances(g, u). Accepts r == 0,
/// for which the boundary is u itself.
std::size_t circumference(const NetworkGraph& g, const NetPoint& u,
                          const std::vector<double>& from_source, double r);

}  // namespace netpoint
