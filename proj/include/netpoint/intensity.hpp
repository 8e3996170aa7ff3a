#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netpoint/events.hpp"
#include "netpoint/graph.hpp"

namespace netpoint {

// Edgewise intensities are count / edge length (events per unit length).
// Every vertex-level measure is the arithmetic mean of the edgewise
// intensities over the incident edges selected, normalized by the number of
// edges actually averaged.

using MarkFilter = std::optional<std::string_view>;

std::size_t count_on_edge(const EventSet& events, EdgeId e, MarkFilter mark = std::nullopt);

double edge_intensity(const NetworkGraph& g, const EventSet& events, EdgeId e,
                      MarkFilter mark = std::nullopt);

/// Edgewise intensity of every edge, indexed by edge id.
std::vector<double> edge_intensities(const NetworkGraph& g, const EventSet& events,
                                     MarkFilter mark = std::nullopt);

/// Mean edgewise intensity over the undirected edges at v.
/// Throws IsolatedVertex when v has no undirected edge.
double neighborhood_intensity(const NetworkGraph& g, const EventSet& events, VertexId v,
                              MarkFilter mark = std::nullopt);

/// Mean edgewise intensity along a path. Throws NotAPath unless the
/// sequence classifies as a path of length >= 1.
double path_intensity(const NetworkGraph& g, const EventSet& events,
                      const VertexEdgeSequence& path, MarkFilter mark = std::nullopt);

struct DirectionalCounts {
  std::size_t in = 0;   ///< events on arcs pointing to v
  std::size_t out = 0;  ///< events on arcs departing from v

  friend bool operator==(const DirectionalCounts&, const DirectionalCounts&) = default;
};

DirectionalCounts directional_counts(const NetworkGraph& g, const EventSet& events, VertexId v,
                                     MarkFilter mark = std::nullopt);

enum class Side { In, Out };

/// Mean edgewise intensity over in-arcs or out-arcs of v.
/// Throws EmptyIncidenceSet when v has no arc on that side.
double directional_intensity(const NetworkGraph& g, const EventSet& events, VertexId v, Side side,
                             MarkFilter mark = std::nullopt);

/// Incidence sets to unite for the complete intensity.
enum IncidenceSet : std::uint8_t {
  kNeighbors = 1,  ///< undirected edges
  kParents = 2,    ///< in-arcs
  kChildren = 4,   ///< out-arcs
  kAllIncidences = kNeighbors | kParents | kChildren,
};

/// Mean edgewise intensity over the union of the selected incident edge
/// sets, each edge counted once. Throws EmptyIncidenceSet when the union is
/// empty.
double complete_intensity(const NetworkGraph& g, const EventSet& events, VertexId v,
                          std::uint8_t selector = kAllIncidences, MarkFilter mark = std::nullopt);

/// Incident edges of v selected by `selector`, sorted.
std::vector<EdgeId> incident_edges(const NetworkGraph& g, VertexId v, std::uint8_t selector);

// ---------------------------------------------------------------------------
// Temporal counting

struct SliceCounts {
  std::vector<std::size_t> counts;  ///< one entry per slice
  std::size_t excluded = 0;         ///< events on the edge outside [t_0, t_n)
};

/// Per-slice counts on edge e. Throws MissingTimes unless every event in
/// the set carries a time.
SliceCounts slice_counts(const EventSet& events, const TimeGrid& grid, EdgeId e,
                         MarkFilter mark = std::nullopt);

/// Events on e in slices lying wholly before t (t_{i+1} <= t).
/// Requires t >= t_0.
std::size_t cumulative_count(const EventSet& events, const TimeGrid& grid, EdgeId e, double t,
                             MarkFilter mark = std::nullopt);

// ---------------------------------------------------------------------------
// Tables

enum class VertexMeasure { Neighborhood, In, Out, Complete };

/// Intensities per channel (overall, one per mark category, or one per
/// time slice). Vertices where the measure is undefined hold 0 and are
/// flagged in `undefined`.
struct IntensityTable {
  std::vector<std::string> channels;
  std::vector<std::vector<double>> edge_values;    ///< [channel][edge]
  std::vector<std::vector<double>> vertex_values;  ///< [channel][vertex]
  std::vector<bool> undefined;                     ///< [vertex]
  VertexMeasure measure = VertexMeasure::Neighborhood;
  std::size_t excluded_events = 0;  ///< time-slice tables only
};

/// One channel ("all") or, with `by_mark`, one channel per category.
IntensityTable intensity_table(const NetworkGraph& g, const EventSet& events,
                               VertexMeasure measure = VertexMeasure::Neighborhood,
                               bool by_mark = false);

/// One channel per time slice; edgewise values are slice counts / length.
IntensityTable slice_intensity_table(const NetworkGraph& g, const EventSet& events,
                                     const TimeGrid& grid,
                                     VertexMeasure measure = VertexMeasure::Neighborhood,
                                     MarkFilter mark = std::nullopt);

/// Vertex-level mean of arbitrary edge values for the given measure;
/// nullopt when the selected incident set is empty.
std::optional<double> vertex_mean(const NetworkGraph& g, const std::vector<double>& edge_values,
                                  VertexId v, VertexMeasure measure);

}  // namespace netpoint
