#include "netpoint/intensity.hpp"

#include <algorithm>
#include <string>

#include "netpoint/error.hpp"
#include "netpoint/parallel.hpp"

namespace netpoint {

namespace {

bool matches(const EventRecord& r, const MarkFilter& mark) {
  return !mark || (r.mark && *r.mark == *mark);
}

double mean_over(const std::vector<EdgeId>& ids, const std::vector<double>& values) {
  double sum = 0.0;
  for (EdgeId id : ids) sum += values[id];
  return sum / static_cast<double>(ids.size());
}

std::uint8_t selector_for(VertexMeasure measure) {
  switch (measure) {
    case VertexMeasure::Neighborhood: return kNeighbors;
    case VertexMeasure::In: return kParents;
    case VertexMeasure::Out: return kChildren;
    case VertexMeasure::Complete: return kAllIncidences;
  }
  return kNeighbors;
}

void require_times(const EventSet& events) {
  if (!events.all_timed()) {
    fail(ErrorCode::MissingTimes, "temporal counting needs a time on every event");
  }
}

}  // namespace

std::size_t count_on_edge(const EventSet& events, EdgeId e, MarkFilter mark) {
  auto hosted = events.on_edge(e);
  if (!mark) return hosted.size();
  return static_cast<std::size_t>(std::count_if(
      hosted.begin(), hosted.end(), [&](std::size_t i) { return matches(events[i], mark); }));
}

double edge_intensity(const NetworkGraph& g, const EventSet& events, EdgeId e, MarkFilter mark) {
  const Edge& edge = g.edge(e);
  return static_cast<double>(count_on_edge(events, e, mark)) / edge.length;
}

std::vector<double> edge_intensities(const NetworkGraph& g, const EventSet& events,
                                     MarkFilter mark) {
  const auto m = static_cast<std::int64_t>(g.edge_count());
  std::vector<double> out(g.edge_count());
  const auto& edges = g.edges();
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (std::int64_t e = 0; e < m; ++e) {
    out[e] = static_cast<double>(count_on_edge(events, static_cast<EdgeId>(e), mark)) /
             edges[e].length;
  }
  return out;
}

std::vector<EdgeId> incident_edges(const NetworkGraph& g, VertexId v, std::uint8_t selector) {
  std::vector<EdgeId> ids;
  if (selector & kNeighbors) {
    auto s = g.undirected_edges(v);
    ids.insert(ids.end(), s.begin(), s.end());
  }
  if (selector & kParents) {
    auto s = g.in_arcs(v);
    ids.insert(ids.end(), s.begin(), s.end());
  }
  if (selector & kChildren) {
    auto s = g.out_arcs(v);
    ids.insert(ids.end(), s.begin(), s.end());
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::optional<double> vertex_mean(const NetworkGraph& g, const std::vector<double>& edge_values,
                                  VertexId v, VertexMeasure measure) {
  auto ids = incident_edges(g, v, selector_for(measure));
  if (ids.empty()) return std::nullopt;
  return mean_over(ids, edge_values);
}

namespace {

double vertex_level(const NetworkGraph& g, const EventSet& events, VertexId v,
                    std::uint8_t selector, MarkFilter mark, ErrorCode empty_code,
                    const char* what) {
  auto ids = incident_edges(g, v, selector);
  if (ids.empty()) {
    fail(empty_code, "vertex " + std::to_string(v) + " has no " + what);
  }
  double sum = 0.0;
  for (EdgeId id : ids) sum += edge_intensity(g, events, id, mark);
  return sum / static_cast<double>(ids.size());
}

}  // namespace

double neighborhood_intensity(const NetworkGraph& g, const EventSet& events, VertexId v,
                              MarkFilter mark) {
  return vertex_level(g, events, v, kNeighbors, mark, ErrorCode::IsolatedVertex,
                      "undirected incident edge");
}

double path_intensity(const NetworkGraph& g, const EventSet& events,
                      const VertexEdgeSequence& path, MarkFilter mark) {
  if (path.length() == 0 || classify_sequence(g, path) != SequenceClass::Path) {
    fail(ErrorCode::NotAPath, "sequence is not a path of length >= 1");
  }
  double sum = 0.0;
  for (EdgeId id : path.edges) sum += edge_intensity(g, events, id, mark);
  return sum / static_cast<double>(path.length());
}

DirectionalCounts directional_counts(const NetworkGraph& g, const EventSet& events, VertexId v,
                                     MarkFilter mark) {
  DirectionalCounts c;
  for (EdgeId id : g.in_arcs(v)) c.in += count_on_edge(events, id, mark);
  for (EdgeId id : g.out_arcs(v)) c.out += count_on_edge(events, id, mark);
  return c;
}

double directional_intensity(const NetworkGraph& g, const EventSet& events, VertexId v, Side side,
                             MarkFilter mark) {
  return side == Side::In
             ? vertex_level(g, events, v, kParents, mark, ErrorCode::EmptyIncidenceSet, "in-arc")
             : vertex_level(g, events, v, kChildren, mark, ErrorCode::EmptyIncidenceSet,
                            "out-arc");
}

double complete_intensity(const NetworkGraph& g, const EventSet& events, VertexId v,
                          std::uint8_t selector, MarkFilter mark) {
  return vertex_level(g, events, v, selector, mark, ErrorCode::EmptyIncidenceSet,
                      "incident edge in the selected sets");
}

SliceCounts slice_counts(const EventSet& events, const TimeGrid& grid, EdgeId e,
                         MarkFilter mark) {
  require_times(events);
  SliceCounts out;
  out.counts.assign(grid.slice_count(), 0);
  for (std::size_t i : events.on_edge(e)) {
    const auto& r = events[i];
    if (!matches(r, mark)) continue;
    if (auto slice = grid.slice_of(*r.time)) {
      ++out.counts[*slice];
    } else {
      ++out.excluded;
    }
  }
  return out;
}

std::size_t cumulative_count(const EventSet& events, const TimeGrid& grid, EdgeId e, double t,
                             MarkFilter mark) {
  if (!(t >= grid.start())) {
    fail(ErrorCode::InvalidArgument, "cumulative count needs t >= t_0");
  }
  const auto slices = slice_counts(events, grid, e, mark);
  const auto& breaks = grid.breakpoints();
  std::size_t total = 0;
  for (std::size_t i = 0; i < slices.counts.size(); ++i) {
    if (breaks[i + 1] <= t) total += slices.counts[i];
  }
  return total;
}

namespace {

void fill_vertices(const NetworkGraph& g, IntensityTable& table) {
  const std::size_t n = g.vertex_count();
  table.undefined.assign(n, false);
  table.vertex_values.assign(table.edge_values.size(), std::vector<double>(n, 0.0));
  const auto selector = selector_for(table.measure);
  for (VertexId v = 0; v < n; ++v) {
    auto ids = incident_edges(g, v, selector);
    if (ids.empty()) {
      table.undefined[v] = true;
      continue;
    }
    for (std::size_t c = 0; c < table.edge_values.size(); ++c) {
      table.vertex_values[c][v] = mean_over(ids, table.edge_values[c]);
    }
  }
}

}  // namespace

IntensityTable intensity_table(const NetworkGraph& g, const EventSet& events,
                               VertexMeasure measure, bool by_mark) {
  IntensityTable table;
  table.measure = measure;
  if (by_mark) {
    for (const auto& category : events.categories()) {
      table.channels.push_back(category);
      table.edge_values.push_back(edge_intensities(g, events, category));
    }
  } else {
    table.channels.push_back("all");
    table.edge_values.push_back(edge_intensities(g, events));
  }
  fill_vertices(g, table);
  return table;
}

IntensityTable slice_intensity_table(const NetworkGraph& g, const EventSet& events,
                                     const TimeGrid& grid, VertexMeasure measure,
                                     MarkFilter mark) {
  require_times(events);
  IntensityTable table;
  table.measure = measure;
  const std::size_t slices = grid.slice_count();
  for (std::size_t s = 0; s < slices; ++s) table.channels.push_back("slice_" + std::to_string(s));
  table.edge_values.assign(slices, std::vector<double>(g.edge_count(), 0.0));
  for (const auto& e : g.edges()) {
    const auto counts = slice_counts(events, grid, e.id, mark);
    table.excluded_events += counts.excluded;
    for (std::size_t s = 0; s < slices; ++s) {
      table.edge_values[s][e.id] = static_cast<double>(counts.counts[s]) / e.length;
    }
  }
  fill_vertices(g, table);
  return table;
}

}  // namespace netpoint
