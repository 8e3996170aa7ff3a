#pragma once

#include <cmath>
#include <initializer_list>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "netpoint/events.hpp"
#include "netpoint/graph.hpp"

namespace fixture {

using namespace netpoint;

struct E {
  VertexId tail;
  VertexId head;
  bool directed = false;
  std::optional<double> length = std::nullopt;
};

inline NetworkGraph graph(std::initializer_list<Point2> coords, std::initializer_list<E> edges,
                          GraphOptions options = {}) {
  std::vector<SpatialVertex> vs;
  VertexId id = 0;
  for (const auto& c : coords) vs.push_back({id++, c});
  std::vector<EdgeSpec> es;
  EdgeId eid = 0;
  for (const auto& e : edges) {
    es.push_back({eid++, e.tail, e.head, e.directed ? EdgeKind::Directed : EdgeKind::Undirected,
                  e.length, {}});
  }
  return build_graph(std::move(vs), std::move(es), options);
}

/// n vertices placed on the x axis; coordinates only matter for smoothing.
inline std::vector<Point2> line_coords(std::size_t n) {
  std::vector<Point2> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({static_cast<double>(i), 0.0});
  return out;
}

inline NetworkGraph graph(const std::vector<Point2>& coords, const std::vector<E>& edges) {
  std::vector<SpatialVertex> vs;
  for (std::size_t i = 0; i < coords.size(); ++i) vs.push_back({static_cast<VertexId>(i), coords[i]});
  std::vector<EdgeSpec> es;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    es.push_back({static_cast<EdgeId>(i), e.tail, e.head,
                  e.directed ? EdgeKind::Directed : EdgeKind::Undirected, e.length, {}});
  }
  return build_graph(std::move(vs), std::move(es));
}

/// Single straight segment (0,0)-(length,0).
inline NetworkGraph segment(double length) {
  return graph({{0, 0}, {length, 0}}, {{0, 1}});
}

/// Unit square 0-1-2-3 with undirected sides.
inline NetworkGraph square() {
  return graph({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

/// Three unit edges in a row: e0 = 0~1, e1 = 1~2, e2 = 2~3.
inline NetworkGraph path3() {
  return graph({{0, 0}, {1, 0}, {2, 0}, {3, 0}}, {{0, 1}, {1, 2}, {2, 3}});
}

/// Star with `spokes` unit spokes; vertex 0 is the center.
inline NetworkGraph star(std::size_t spokes, bool inward_arcs = false) {
  std::vector<Point2> cs{{0, 0}};
  std::vector<E> es;
  for (std::size_t k = 0; k < spokes; ++k) {
    const double a = 6.283185307179586 * static_cast<double>(k) / static_cast<double>(spokes);
    cs.push_back({std::cos(a), std::sin(a)});
    const auto leaf = static_cast<VertexId>(k + 1);
    es.push_back(inward_arcs ? E{leaf, 0, true, 1.0} : E{0, leaf, false, 1.0});
  }
  return graph(cs, es);
}

/// n x n unit lattice with undirected edges; 2 n (n - 1) edges.
inline NetworkGraph grid(std::size_t n) {
  std::vector<Point2> cs;
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x) cs.push_back({static_cast<double>(x), static_cast<double>(y)});
  std::vector<E> es;
  auto id = [n](std::size_t x, std::size_t y) { return static_cast<VertexId>(y * n + x); };
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x) {
      if (x + 1 < n) es.push_back({id(x, y), id(x + 1, y)});
      if (y + 1 < n) es.push_back({id(x, y), id(x, y + 1)});
    }
  return graph(cs, es);
}

/// Events at (edge, offset) with optional marks and times.
inline EventSet events(const NetworkGraph& g,
                       std::initializer_list<std::tuple<EdgeId, double>> at) {
  std::vector<EventRecord> rs;
  for (const auto& [e, o] : at) rs.push_back({{e, o}, std::nullopt, std::nullopt});
  return EventSet(g, std::move(rs));
}

inline EventSet events_on(const NetworkGraph& g, const std::vector<EdgeId>& hosts) {
  std::vector<EventRecord> rs;
  for (EdgeId e : hosts) rs.push_back({{e, 0.5 * g.edge(e).length}, std::nullopt, std::nullopt});
  return EventSet(g, std::move(rs));
}

}  // namespace fixture
