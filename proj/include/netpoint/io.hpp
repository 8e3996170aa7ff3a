#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "netpoint/events.hpp"
#include "netpoint/graph.hpp"

namespace netpoint {

// File formats (UTF-8, header row required, columns matched by name):
//   vertices: id,x,y
//   edges:    id,tail,head,kind[,length][,wkt]   kind is U or D, wkt is a
//             quoted LINESTRING from tail to head
//   events:   x,y[,mark][,time]
// Parse failures throw ParseError naming the file, row and column. Rows are
// numbered from 1 for the first data row.

struct RejectedEvent {
  std::size_t row = 0;
  Point2 location;
  std::string reason;
};

struct IngestReport {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t events_read = 0;
  std::size_t events_snapped = 0;
  std::vector<RejectedEvent> rejected;
  std::vector<VertexId> isolated;  ///< vertices with no incident edge
};

struct LoadedNetwork {
  NetworkGraph graph;
  IngestReport report;
};

LoadedNetwork load_network(std::istream& vertices, std::istream& edges,
                           const GraphOptions& options = {});
LoadedNetwork load_network(const std::filesystem::path& vertices,
                           const std::filesystem::path& edges, const GraphOptions& options = {});

/// Writes both files with shortest round-trip number formatting; the length
/// column is always present, the wkt column only for explicit polylines.
void save_network(const NetworkGraph& g, std::ostream& vertices, std::ostream& edges);
void save_network(const NetworkGraph& g, const std::filesystem::path& vertices,
                  const std::filesystem::path& edges);

/// Planar event as read from file, before snapping.
struct RawEvent {
  std::size_t row = 0;
  Point2 location;
  std::optional<std::string> mark;
  std::optional<double> time;
};

std::vector<RawEvent> read_events_csv(std::istream& in, const std::string& name = "events");
/// GeoJSON FeatureCollection of Points; optional "mark" and "time"
/// properties.
std::vector<RawEvent> read_events_geojson(std::istream& in, const std::string& name = "events");
/// Dispatches on the extension (.geojson / .json, otherwise CSV).
std::vector<RawEvent> read_events(const std::filesystem::path& path);

struct Projection {
  NetPoint position;
  double distance = 0.0;  ///< planar distance from the query to the edge
};

/// Orthogonal projection of a planar location onto the nearest edge
/// polyline; equidistant edges resolve to the lowest edge id.
std::optional<Projection> nearest_edge(const NetworkGraph& g, Point2 location);

struct SnappedEvents {
  EventSet events;
  IngestReport report;
  std::vector<double> snap_distances;  ///< per accepted event
};

/// Snaps each event onto its nearest edge. Events farther than `tolerance`
/// are rejected and listed in the report rather than raising.
SnappedEvents snap_events(const NetworkGraph& g, const std::vector<RawEvent>& raw,
                          double tolerance);
SnappedEvents snap_events(const NetworkGraph& g, const std::filesystem::path& events,
                          double tolerance);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

}  // namespace netpoint
